from __future__ import absolute_import, division, print_function, unicode_literals

from collections import OrderedDict

import numpy as np

from ._version import __version__
from .flows import FlowTrace
from .parameters import DerivedParams
from .quadrature import RadialField, RadialRule
from .utils.logger import setup_module_logger, get_logger

__all__ = ["TraceStore", "Table"]


class Table(object):
    """
    Rows of a tabular result, such as a parameter scan.

    Parameters
    ----------
    header : list of str
        Column names.
    rows : list of list
        Rows, one value per column. None marks an empty cell.
    meta : dict, optional
        Extra information stored with the table. Default is None.
    """
    def __init__(self, header, rows, meta=None):
        self.header = list(header)
        self.rows = [list(row) for row in rows]
        self.meta = {} if meta is None else dict(meta)

        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError("Row has {} values, the header {} columns".format(len(row), len(self.header)))


    def __len__(self):
        return len(self.rows)


    def column(self, name):
        """
        Values of column `name` as a float array, with empty cells as nan.
        """
        index = self.header.index(name)
        return np.array([np.nan if row[index] is None else row[index] for row in self.rows], dtype=float)


    def records(self):
        """
        The rows as dictionaries.
        """
        return [dict(zip(self.header, row)) for row in self.rows]



class TraceStore(object):
    """
    Save and load flow traces and tables as HDF5 or Exdir files.

    Parameters
    ----------
    backend : {"auto", "hdf5", "exdir"}, optional
        The fileformat used to save and load data to/from file. "auto"
        assumes the filenames ends with either ".h5" for HDF5 files or
        ".exdir" for Exdir files. If unknown fileextension defaults to
        saving data as HDF5 files. Default is "auto".
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Set the threshold for the logging level. Logging messages less
        severe than this level is ignored. If None, no logging is performed.
        Default logger level is "info".
    """
    def __init__(self, backend="auto", logger_level="info"):
        if backend not in ["auto", "hdf5", "exdir"]:
            raise ValueError("backend {} not supported. Supported backends are: auto, hdf5, and exdir".format(backend))

        self.backend = backend

        setup_module_logger(class_instance=self, level=logger_level)


    def _backend(self, filename, action):
        logger = get_logger(self)

        if self.backend == "auto":
            if filename.endswith(".h5"):
                current_backend = "hdf5"
            elif filename.endswith(".exdir"):
                current_backend = "exdir"
            else:
                logger.warning("Unknown file extension, defaulting to {} {} as a HDF5 file.".format(action, filename))
                current_backend = "hdf5"
        else:
            current_backend = self.backend

        if current_backend == "hdf5":
            try:
                import h5py as backend
            except ImportError:
                raise ImportError("The HDF5 backend requires: h5py")

        elif current_backend == "exdir":
            try:
                import exdir.core as backend
            except ImportError:
                raise ImportError("The Exdir backend requires: exdir")

        return backend


    def save(self, trace, filename):
        """
        Save a FlowTrace to `filename`.

        Parameters
        ----------
        trace : FlowTrace
            The trace to save.
        filename : str
            Name of the file.

        Raises
        ------
        ImportError
            If h5py is not installed.
        ImportError
            If Exdir is not installed.
        """
        backend = self._backend(filename, "save")

        f = backend.File(filename, "w")
        try:
            f.attrs["kind"] = "flow trace"
            f.attrs["version"] = __version__
            f.attrs["variant"] = trace.variant
            f.attrs["r0"] = trace.r0

            for name, value in zip(trace.dp._fields, trace.dp):
                f.attrs[name] = np.nan if value is None else value

            for name in ["times", "mass", "entropy", "fisher", "deviation"]:
                f.create_dataset(name, data=getattr(trace, name))

            if trace.l1_distance is not None:
                f.create_dataset("l1_distance", data=trace.l1_distance)

            norms = f.create_group("lq_norms")
            for q in trace.lq_norms:
                dataset = norms.create_dataset("lq_{:g}".format(q), data=trace.lq_norms[q])
                dataset.attrs["q"] = q

            if trace.final is not None:
                rule = trace.final.rule
                final = f.create_group("final")
                final.attrs["kind"] = rule.kind
                final.attrs["scale"] = rule.scale
                final.attrs["shift"] = rule.shift
                final.create_dataset("nodes", data=rule.nodes)
                final.create_dataset("log_weights", data=rule.log_weights)
                final.create_dataset("values", data=trace.final.values)
        finally:
            f.close()


    def load(self, filename):
        """
        Load a FlowTrace from `filename`.

        Parameters
        ----------
        filename : str
            Name of the file.

        Returns
        -------
        trace : FlowTrace
            The loaded trace.
        """
        backend = self._backend(filename, "load")

        f = backend.File(filename, "r")
        try:
            values = []
            for name in DerivedParams._fields:
                value = f.attrs[name]
                if name == "beta_fs" and np.isnan(value):
                    value = None
                values.append(int(value) if name == "d" else value)
            dp = DerivedParams(*values)

            lq_norms = {}
            for name in f["lq_norms"]:
                dataset = f["lq_norms"][name]
                lq_norms[float(dataset.attrs["q"])] = dataset[()]

            final = None
            if "final" in f:
                group = f["final"]
                rule = RadialRule(dp.n, group["nodes"][()], group["log_weights"][()],
                                  kind=str(group.attrs["kind"]), scale=group.attrs["scale"],
                                  shift=group.attrs["shift"])
                final = RadialField(rule, group["values"][()])

            trace = FlowTrace(str(f.attrs["variant"]), dp, float(f.attrs["r0"]),
                              f["times"][()], f["mass"][()], f["entropy"][()], f["fisher"][()],
                              f["deviation"][()],
                              lq_norms=OrderedDict(sorted(lq_norms.items())),
                              l1_distance=f["l1_distance"][()] if "l1_distance" in f else None,
                              final=final)
        finally:
            f.close()

        return trace


    def save_table(self, table, filename):
        """
        Save a Table to `filename`. Empty cells are stored as nan.
        """
        backend = self._backend(filename, "save")

        f = backend.File(filename, "w")
        try:
            f.attrs["kind"] = "table"
            f.attrs["version"] = __version__
            f.attrs["header"] = [name.encode("utf8") for name in table.header]

            for key in table.meta:
                f.attrs[key] = table.meta[key]

            for name in table.header:
                column = [table.rows[i][table.header.index(name)] for i in range(len(table))]
                if all(isinstance(value, str) or value is None for value in column) and \
                        any(isinstance(value, str) for value in column):
                    data = np.array([("" if value is None else value).encode("utf8") for value in column])
                else:
                    data = table.column(name)
                f.create_dataset(name, data=data)
        finally:
            f.close()


    def load_table(self, filename):
        """
        Load a Table from `filename`. nan and empty strings become None.
        """
        backend = self._backend(filename, "load")

        f = backend.File(filename, "r")
        try:
            try:
                header = [name.decode("utf8") for name in f.attrs["header"]]
            except (UnicodeDecodeError, AttributeError):
                header = [str(name) for name in f.attrs["header"]]

            columns = []
            for name in header:
                column = []
                for value in f[name][()]:
                    if isinstance(value, bytes):
                        value = value.decode("utf8") or None
                    elif np.isnan(value):
                        value = None
                    else:
                        value = float(value)
                    column.append(value)
                columns.append(column)

            meta = {key: f.attrs[key] for key in f.attrs if key not in ["kind", "version", "header"]}
        finally:
            f.close()

        rows = [list(row) for row in zip(*columns)]
        return Table(header, rows, meta=meta)

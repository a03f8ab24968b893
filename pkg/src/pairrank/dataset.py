"""In-memory dataset model, CSV/ARFF ingestion and column projection.

A :class:`Dataset` is immutable once built.  Numeric attributes hold float64
arrays (missing values already mean-imputed); nominal attributes and the class
hold small integer codes in a :class:`DiscreteColumn`.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

NUMERIC = "numeric"
NOMINAL = "nominal"


class DatasetError(ValueError):
    """Malformed input file or invalid dataset operation."""


@dataclass(frozen=True, eq=False)
class DiscreteColumn:
    """Integer-coded column; ``labels[c]`` names code ``c`` when known."""

    codes: np.ndarray
    cardinality: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=np.int32)
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        if self.cardinality < 1:
            raise DatasetError("cardinality must be >= 1")
        if codes.size and (codes.min() < 0 or codes.max() >= self.cardinality):
            raise DatasetError("codes must lie in [0, cardinality)")
        if self.labels is not None and len(self.labels) != self.cardinality:
            raise DatasetError("labels must name every code")

    def __len__(self):
        return self.codes.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DiscreteColumn):
            return NotImplemented
        return (self.cardinality == other.cardinality
                and self.labels == other.labels
                and np.array_equal(self.codes, other.codes))

    def take(self, rows) -> "DiscreteColumn":
        return DiscreteColumn(self.codes[rows], self.cardinality, self.labels)


@dataclass(frozen=True, eq=False)
class AttributeColumn:
    """Either a numeric column (``values``) or a nominal one (``discrete``)."""

    kind: str
    values: np.ndarray | None = None
    discrete: DiscreteColumn | None = None
    missing: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == NUMERIC:
            if self.values is None:
                raise DatasetError("numeric column needs values")
            vals = np.ascontiguousarray(self.values, dtype=np.float64)
            if np.isnan(vals).any():
                raise DatasetError("numeric column contains NaN")
            vals.setflags(write=False)
            object.__setattr__(self, "values", vals)
        elif self.kind == NOMINAL:
            if self.discrete is None:
                raise DatasetError("nominal column needs a DiscreteColumn")
        else:
            raise DatasetError(f"unknown attribute kind {self.kind!r}")

    @classmethod
    def numeric(cls, values, missing=None) -> "AttributeColumn":
        return cls(NUMERIC, values=np.asarray(values, dtype=np.float64), missing=missing)

    @classmethod
    def nominal(cls, codes, cardinality: int, labels=None) -> "AttributeColumn":
        return cls(NOMINAL, discrete=DiscreteColumn(codes, cardinality,
                                                    None if labels is None else tuple(labels)))

    @property
    def is_numeric(self) -> bool:
        return self.kind == NUMERIC

    def __len__(self):
        return len(self.values) if self.is_numeric else len(self.discrete)

    def __eq__(self, other):
        if not isinstance(other, AttributeColumn):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.is_numeric:
            return np.array_equal(self.values, other.values)
        return self.discrete == other.discrete

    def take(self, rows) -> "AttributeColumn":
        if self.is_numeric:
            miss = None if self.missing is None else self.missing[rows]
            return AttributeColumn(NUMERIC, values=self.values[rows], missing=miss)
        return AttributeColumn(NOMINAL, discrete=self.discrete.take(rows))


@dataclass(frozen=True, eq=False)
class Dataset:
    name: str
    attribute_names: tuple[str, ...]
    columns: tuple[AttributeColumn, ...]
    class_column: DiscreteColumn
    class_name: str = "class"

    def __post_init__(self):
        object.__setattr__(self, "attribute_names", tuple(self.attribute_names))
        object.__setattr__(self, "columns", tuple(self.columns))
        w = len(self.class_column)
        if w < 1:
            raise DatasetError("dataset needs at least one instance")
        if len(self.attribute_names) != len(self.columns):
            raise DatasetError("one name per attribute column required")
        if len(set(self.attribute_names)) != len(self.attribute_names):
            raise DatasetError("attribute names must be unique")
        for name, col in zip(self.attribute_names, self.columns):
            if len(col) != w:
                raise DatasetError(f"column {name!r} has {len(col)} values, expected {w}")
        present = np.bincount(self.class_column.codes, minlength=self.class_column.cardinality)
        if (present == 0).any():
            raise DatasetError("every class label must occur at least once")

    @property
    def n_instances(self) -> int:
        return len(self.class_column)

    @property
    def n_attributes(self) -> int:
        return len(self.columns)

    @property
    def n_classes(self) -> int:
        return self.class_column.cardinality

    @property
    def class_labels(self) -> tuple[str, ...]:
        if self.class_column.labels is not None:
            return self.class_column.labels
        return tuple(str(c) for c in range(self.n_classes))

    @property
    def is_discrete(self) -> bool:
        return all(not c.is_numeric for c in self.columns)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.attribute_names == other.attribute_names
                and self.class_column == other.class_column
                and self.class_name == other.class_name
                and all(a == b for a, b in zip(self.columns, other.columns)))

    def index_of(self, name: str) -> int:
        try:
            return self.attribute_names.index(name)
        except ValueError:
            raise DatasetError(f"no attribute named {name!r}") from None

    def code_matrix(self) -> np.ndarray:
        """(n, w) int32 matrix of nominal codes; requires a fully discrete dataset."""
        if not self.is_discrete:
            raise DatasetError("code_matrix requires a fully discrete dataset")
        out = np.empty((self.n_attributes, self.n_instances), dtype=np.int32)
        for i, col in enumerate(self.columns):
            out[i] = col.discrete.codes
        return out

    def cardinalities(self) -> np.ndarray:
        return np.array([c.discrete.cardinality for c in self.columns], dtype=np.int64)

    def take_rows(self, rows) -> "Dataset":
        """Row subset; class cardinality and labels are kept even if a class vanishes."""
        rows = np.asarray(rows)
        cls = self.class_column.take(rows)
        ds = object.__new__(Dataset)
        object.__setattr__(ds, "name", self.name)
        object.__setattr__(ds, "attribute_names", self.attribute_names)
        object.__setattr__(ds, "columns", tuple(c.take(rows) for c in self.columns))
        object.__setattr__(ds, "class_column", cls)
        object.__setattr__(ds, "class_name", self.class_name)
        return ds


def project(ds: Dataset, attrs: Sequence[int]) -> Dataset:
    """Keep the listed attributes, in the given order, plus the class."""
    attrs = [int(a) for a in attrs]
    if len(set(attrs)) != len(attrs):
        raise DatasetError("duplicate attribute id in projection")
    for a in attrs:
        if not 0 <= a < ds.n_attributes:
            raise DatasetError(f"attribute id {a} out of range [0, {ds.n_attributes})")
    return Dataset(ds.name, [ds.attribute_names[a] for a in attrs],
                   [ds.columns[a] for a in attrs], ds.class_column, ds.class_name)


def class_distribution(ds: Dataset) -> list[tuple[str, int]]:
    counts = np.bincount(ds.class_column.codes, minlength=ds.n_classes)
    return [(label, int(c)) for label, c in zip(ds.class_labels, counts)]


def from_arrays(X, y, names=None, name="data", class_labels=None, nominal=()) -> Dataset:
    """Build a dataset from a (w, n) matrix and a label vector.

    Columns listed in ``nominal`` are treated as non-negative integer codes.
    Labels in ``y`` are coded in first-appearance order unless ``class_labels``
    gives the order.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    w, n = X.shape
    names = [f"a{i}" for i in range(n)] if names is None else list(names)
    nominal = set(nominal)
    cols = []
    for i in range(n):
        if i in nominal:
            codes = X[:, i].astype(np.int64)
            cols.append(AttributeColumn.nominal(codes, int(codes.max()) + 1 if w else 1))
        else:
            cols.append(AttributeColumn.numeric(X[:, i].astype(np.float64)))
    y = list(np.asarray(y).tolist())
    order = list(class_labels) if class_labels is not None else _first_appearance(y)
    index = {v: k for k, v in enumerate(order)}
    cls = DiscreteColumn(np.array([index[v] for v in y], dtype=np.int32), len(order),
                         tuple(str(v) for v in order))
    return Dataset(name, names, cols, cls)


def _first_appearance(values: Iterable) -> list:
    seen = {}
    for v in values:
        if v not in seen:
            seen[v] = len(seen)
    return list(seen)


def _parse_float(tok: str):
    try:
        v = float(tok)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _numeric_column(raw: list[str], missing_token: str) -> AttributeColumn | None:
    vals = np.empty(len(raw), dtype=np.float64)
    miss = np.zeros(len(raw), dtype=bool)
    for r, tok in enumerate(raw):
        if tok == missing_token or tok == "":
            miss[r] = True
            continue
        v = _parse_float(tok)
        if v is None:
            return None
        vals[r] = v
    if miss.all():
        return None
    if miss.any():
        vals[miss] = vals[~miss].mean()
    return AttributeColumn(NUMERIC, values=vals, missing=miss if miss.any() else None)


def _nominal_column(raw: list[str], missing_token: str, declared=None, where=None) -> AttributeColumn:
    """Code values; missing values get one extra category appended after the others."""
    labels = list(declared) if declared is not None else _first_appearance(
        t for t in raw if t != missing_token)
    index = {v: k for k, v in enumerate(labels)}
    codes = np.empty(len(raw), dtype=np.int32)
    has_missing = False
    for r, tok in enumerate(raw):
        if tok == missing_token:
            has_missing = True
            codes[r] = -1
            continue
        k = index.get(tok)
        if k is None:
            loc = f" at {where(r)}" if where else ""
            raise DatasetError(f"undeclared nominal value {tok!r}{loc}")
        codes[r] = k
    if has_missing:
        if missing_token in index:
            codes[codes < 0] = index[missing_token]
        else:
            codes[codes < 0] = len(labels)
            labels.append(missing_token)
    if not labels:
        labels = [missing_token]
    return AttributeColumn.nominal(codes, len(labels), labels)


def _resolve_class(header: list[str], class_spec) -> int:
    if class_spec is None:
        return len(header) - 1
    if isinstance(class_spec, int) or (isinstance(class_spec, str) and class_spec.lstrip("-").isdigit()
                                        and class_spec not in header):
        idx = int(class_spec)
        if idx < 0:
            idx += len(header)
        if not 0 <= idx < len(header):
            raise DatasetError(f"class column index {class_spec} out of range")
        return idx
    if class_spec not in header:
        raise DatasetError(f"class column {class_spec!r} not found in header")
    return header.index(class_spec)


def _build(name, header, columns_raw, class_idx, missing_token, where,
           declared=None) -> Dataset:
    cls_raw = columns_raw[class_idx]
    keep = [r for r, t in enumerate(cls_raw) if t != missing_token and t != ""]
    if not keep:
        raise DatasetError(f"class column {header[class_idx]!r} is entirely missing")
    if len(keep) < len(cls_raw):
        log.warning("%s: dropped %d rows with a missing class", name, len(cls_raw) - len(keep))
        columns_raw = [[col[r] for r in keep] for col in columns_raw]
        cls_raw = columns_raw[class_idx]
        kept_rows = keep
        where = (lambda f: (lambda r: f(kept_rows[r])))(where)
    names, cols = [], []
    for j, raw in enumerate(columns_raw):
        if j == class_idx:
            continue
        decl = declared[j] if declared is not None else None
        if decl is None or decl == NUMERIC:
            col = _numeric_column(raw, missing_token)
            if col is None:
                if decl == NUMERIC:
                    bad = next((r for r, t in enumerate(raw)
                                if t != missing_token and _parse_float(t) is None), None)
                    if bad is None:
                        col = AttributeColumn.numeric(np.zeros(len(raw)))
                    else:
                        raise DatasetError(f"non-numeric value {raw[bad]!r} for numeric "
                                           f"attribute {header[j]!r} at {where(bad)}")
                else:
                    col = _nominal_column(raw, missing_token)
        else:
            col = _nominal_column(raw, missing_token, decl,
                                  where=lambda r, j=j: f"{where(r)}, attribute {header[j]!r}")
        names.append(header[j])
        cols.append(col)
    cdecl = declared[class_idx] if declared is not None else None
    if cdecl == NUMERIC:
        raise DatasetError("class attribute must be nominal")
    cls_col = _nominal_column(cls_raw, missing_token, cdecl)
    codes = cls_col.discrete.codes
    labels = list(cls_col.discrete.labels)
    # declared-but-unused class labels are dropped so every label occurs
    used = np.unique(codes)
    if len(used) < len(labels):
        remap = np.full(len(labels), -1, dtype=np.int32)
        remap[used] = np.arange(len(used), dtype=np.int32)
        codes = remap[codes]
        labels = [labels[u] for u in used]
    cls = DiscreteColumn(codes, len(labels), tuple(labels))
    return Dataset(name, names, cols, cls, header[class_idx])


def load_csv(path, class_spec=None, missing_token: str = "?") -> Dataset:
    """Load a comma-separated file with one header row.

    ``class_spec`` is a column name or index (default: last column).  Columns
    whose present values all parse as reals are numeric; anything else is
    nominal, coded in first-appearance order.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in rows if r and any(t.strip() for t in r)]
    if not rows:
        raise DatasetError(f"{path}: missing header row")
    header = [h.strip() for h in rows[0]]
    data = rows[1:]
    if not data:
        raise DatasetError(f"{path}: no data rows")
    for r, row in enumerate(data):
        if len(row) != len(header):
            raise DatasetError(f"{path}: row {r + 2} has {len(row)} fields, header has {len(header)}")
    class_idx = _resolve_class(header, class_spec)
    columns_raw = [[row[j].strip() for row in data] for j in range(len(header))]
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return _build(name, header, columns_raw, class_idx, missing_token,
                  where=lambda r: f"row {r + 2}")


def _split_arff_list(text: str) -> list[str]:
    return [t.strip().strip("'\"") for t in next(csv.reader([text], skipinitialspace=True,
                                                           quotechar="'", escapechar="\\"))]


def _arff_tokens(line: str) -> tuple[str, str]:
    """Split '@attribute <name> <type>' into (name, type), honouring quotes."""
    rest = line.split(None, 1)[1].strip() if len(line.split(None, 1)) > 1 else ""
    if rest[:1] in ("'", '"'):
        q = rest[0]
        end = rest.index(q, 1)
        return rest[1:end], rest[end + 1:].strip()
    parts = rest.split(None, 1)
    if len(parts) < 2:
        raise DatasetError(f"malformed attribute declaration: {line!r}")
    return parts[0], parts[1].strip()


def load_arff(path, class_spec=None, missing_token: str = "?") -> Dataset:
    """Load a dense ARFF file with numeric and nominal attributes.

    The last declared attribute is the class unless ``class_spec`` names
    another.  Nominal codes follow declaration order.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    relation = os.path.splitext(os.path.basename(str(path)))[0]
    header, declared = [], []
    data, data_lines = [], []
    in_data = False
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        if not in_data:
            key = s.split(None, 1)[0].lower()
            if key == "@relation":
                relation = s.split(None, 1)[1].strip().strip("'\"") if " " in s else relation
            elif key == "@attribute":
                aname, atype = _arff_tokens(s)
                if atype.startswith("{"):
                    if not atype.endswith("}"):
                        raise DatasetError(f"{path}:{lineno}: unterminated nominal list")
                    declared.append(_split_arff_list(atype[1:-1]))
                elif atype.lower() in ("numeric", "real", "integer"):
                    declared.append(NUMERIC)
                else:
                    raise DatasetError(f"{path}:{lineno}: unsupported attribute type {atype!r}")
                header.append(aname)
            elif key == "@data":
                in_data = True
            else:
                raise DatasetError(f"{path}:{lineno}: unexpected line {s!r}")
            continue
        if s.startswith("{"):
            raise DatasetError(f"{path}:{lineno}: sparse ARFF is not supported")
        row = [t.strip().strip("'\"") for t in next(csv.reader([s], skipinitialspace=True,
                                                                quotechar="'", escapechar="\\"))]
        if len(row) != len(header):
            raise DatasetError(f"{path}:{lineno}: data row has {len(row)} fields, "
                               f"{len(header)} attributes declared")
        data.append(row)
        data_lines.append(lineno)
    if not header:
        raise DatasetError(f"{path}: no @attribute declarations")
    if not in_data:
        raise DatasetError(f"{path}: missing @data section")
    if not data:
        raise DatasetError(f"{path}: no data rows")
    class_idx = _resolve_class(header, class_spec)
    columns_raw = [[row[j] for row in data] for j in range(len(header))]
    return _build(relation, header, columns_raw, class_idx, missing_token,
                  where=lambda r: f"line {data_lines[r]}", declared=declared)


def load(path, class_spec=None, missing_token: str = "?", fmt: str | None = None) -> Dataset:
    fmt = fmt or ("arff" if str(path).lower().endswith(".arff") else "csv")
    if fmt == "arff":
        return load_arff(path, class_spec, missing_token)
    if fmt == "csv":
        return load_csv(path, class_spec, missing_token)
    raise DatasetError(f"unknown format {fmt!r}")


def _cell(col: AttributeColumn, r: int) -> str:
    if col.is_numeric:
        return repr(float(col.values[r]))
    d = col.discrete
    code = int(d.codes[r])
    return d.labels[code] if d.labels is not None else str(code)


def write_csv(ds: Dataset, dest) -> None:
    """Write ``ds`` with the class as last column; ``dest`` is a path or text stream."""
    own = not hasattr(dest, "write")
    fh = open(dest, "w", newline="", encoding="utf-8") if own else dest
    try:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(list(ds.attribute_names) + [ds.class_name])
        labels = ds.class_labels
        for r in range(ds.n_instances):
            wr.writerow([_cell(c, r) for c in ds.columns]
                        + [labels[ds.class_column.codes[r]]])
    finally:
        if own:
            fh.close()


def _arff_quote(s: str) -> str:
    if s == "" or any(ch in s for ch in " ,{}'\"%\t"):
        return "'" + s.replace("'", "\\'") + "'"
    return s


def write_arff(ds: Dataset, dest) -> None:
    own = not hasattr(dest, "write")
    fh = open(dest, "w", encoding="utf-8") if own else dest
    try:
        fh.write(f"@relation {_arff_quote(ds.name)}\n\n")
        for name, col in zip(ds.attribute_names, ds.columns):
            if col.is_numeric:
                fh.write(f"@attribute {_arff_quote(name)} numeric\n")
            else:
                d = col.discrete
                labels = d.labels or tuple(str(c) for c in range(d.cardinality))
                fh.write(f"@attribute {_arff_quote(name)} {{{','.join(map(_arff_quote, labels))}}}\n")
        fh.write(f"@attribute {_arff_quote(ds.class_name)} "
                 f"{{{','.join(map(_arff_quote, ds.class_labels))}}}\n\n@data\n")
        labels = ds.class_labels
        for r in range(ds.n_instances):
            cells = [_arff_quote(_cell(c, r)) for c in ds.columns]
            cells.append(_arff_quote(labels[ds.class_column.codes[r]]))
            fh.write(",".join(cells) + "\n")
    finally:
        if own:
            fh.close()


def to_csv_string(ds: Dataset) -> str:
    buf = io.StringIO()
    write_csv(ds, buf)
    return buf.getvalue()

"""
Contains baseclasses with which to build schemas (i.e. ordered column name and type mappings)
for the tables magflow writes: trajectories, drift reports, orbit tables.
"""

from __future__ import annotations

import string
from typing import Iterator, Mapping, Optional, TypeAlias

import numpy as np
import pandas as pd
from pandas import DataFrame
from pandas.api.extensions import ExtensionDtype

ColType: TypeAlias = ExtensionDtype | np.dtype | type | str


class ColName(str):
    """
    Subclass of str used for column names,
    restricted to contain only ascii letters + digits + underscore.
    """

    _ALLOWED_CHARS: str = string.ascii_letters + string.digits + "_"

    def __new__(cls, s: str) -> ColName:
        if not s or any(substr not in cls._ALLOWED_CHARS for substr in s):
            raise ValueError(
                f"Column name may only consist of ASCII letters, digits, and underscores, but got {s!r}."
            )
        return str.__new__(cls, s)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class SchemaEntry:

    __slots__ = ("_name", "_type", "docstring")

    def __init__(self, name: ColName | str, type_: ColType, docstring: str = ""):
        """
        Stores a single column name + data type combination (i.e. a single schema entry).
        Supports addition of documentation strings / descriptions to the entries.

        :param name: ColName or string instance representing column name.
        :param type_: column type for this schema entry (ExtensionDtype | np.dtype | type | str)
        :param docstring: (optional) docstring describing this schema entry and/or its purpose.
        """
        self._name: ColName = ColName(str(name))
        self._type: ColType = object
        self.type = type_
        self.docstring: str = docstring

    @property
    def name(self) -> ColName:
        return self._name

    @property
    def type(self) -> ColType:
        return self._type

    @type.setter
    def type(self, type_: ColType):
        if not isinstance(type_, (ExtensionDtype, np.dtype, type, str)):
            raise TypeError("Type attribute must be of type: ExtensionDtype | np.dtype | type | str.")
        self._type = type_

    def __eq__(self, other: SchemaEntry | object) -> bool:
        if isinstance(other, SchemaEntry):
            return self.name == other.name and self.type == other.type
        return NotImplemented

    def __hash__(self) -> int:
        return hash((str(self._name), str(self._type)))

    def __repr__(self) -> str:
        typedesc = getattr(self._type, "__name__", repr(self._type))
        return f"{type(self).__name__}(name={self._name!r}, type={typedesc}, docstring={self.docstring!r})"


class Schema:
    def __init__(self, colentries: Optional[Mapping[str, SchemaEntry]] = None):
        """
        Ordered specification of the columns (names and data types) of a table.

        Entries declared as class attributes come first (base classes before subclasses,
        each in declaration order), followed by the entries passed in `colentries`.

        :param colentries: (optional) mapping of attribute names to SchemaEntry objects.
        """
        self._entries: dict[str, SchemaEntry] = {}
        for klass in reversed(type(self).__mro__):
            for attrname, entry in vars(klass).items():
                if isinstance(entry, SchemaEntry):
                    self._entries[attrname] = entry
        if colentries:
            self.add_entries(colentries)

    def add_entries(self, colentries: Mapping[str, SchemaEntry]) -> None:
        """
        Adds SchemaEntry entries to this schema
        (duplicate column names or existing attribute names are not allowed).

        :param colentries: a mapping of attribute names to SchemaEntry objects.
        :raises ValueError: on duplicate attribute or column names.
        :raises TypeError: if a value is not a SchemaEntry.
        """
        encountered_colnames = {entry.name for entry in self._entries.values()}
        for attrname, entry in colentries.items():
            if not isinstance(entry, SchemaEntry):
                raise TypeError(f"Tried to add column entry of other type than {SchemaEntry.__name__}.")
            if attrname in self._entries:
                raise ValueError(f"Tried to set schema with duplicate attribute name: {attrname!r}")
            if entry.name in encountered_colnames:
                raise ValueError(f"Tried to set schema with duplicate column name: {entry.name!r}")
            self._entries[attrname] = entry
            encountered_colnames.add(entry.name)

    @property
    def columns(self) -> list[str]:
        """Column names for this schema, in order."""
        return [str(entry.name) for entry in self]

    @property
    def types(self) -> list[ColType]:
        return [entry.type for entry in self]

    def items(self) -> Iterator[tuple[ColName, ColType]]:
        """Yields 2-tuples of all contained column names and types."""
        for entry in self:
            yield entry.name, entry.type

    def to_dict(self) -> dict[ColName, ColType]:
        """Returns dictionary of column names and corresponding column types."""
        return {entry.name: entry.type for entry in self}

    def to_new_dframe(self) -> DataFrame:
        """
        Creates an empty DataFrame with the column names and types
        as specified by this schema.
        """
        return pd.DataFrame({entry.name: pd.Series(dtype=entry.type) for entry in self})

    def to_dframe(self, rows: list[Mapping[str, object]]) -> DataFrame:
        """
        Builds a DataFrame from row mappings, with the schema's column order and types.

        :raises KeyError: if a row lacks one of the schema's columns.
        """
        if not rows:
            return self.to_new_dframe()
        missing = [col for col in self.columns if any(col not in row for row in rows)]
        if missing:
            raise KeyError(f"Rows lack schema column(s) {missing!r}.")
        frame = pd.DataFrame([{col: row[col] for col in self.columns} for row in rows], columns=self.columns)
        return frame.astype(self.to_dict())

    def __getitem__(self, colname: ColName | str) -> SchemaEntry:
        """
        Tries to return a SchemaEntry with the provided column name.

        :raise KeyError: if no SchemaEntry exists with column name $colname in this instance.
        """
        for colentry in self:
            if colentry.name == colname:
                return colentry
        raise KeyError(f"No {SchemaEntry.__name__} found with column name {colname!r}.")

    def __iter__(self) -> Iterator[SchemaEntry]:
        yield from self._entries.values()

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: Schema | object) -> bool:
        if not isinstance(other, Schema):
            return NotImplemented
        return list(self) == list(other)

    def __add__(self, other: Schema) -> Schema:
        """
        Concatenates two schemas (self's columns first).

        :raises ValueError: if the schemas share an attribute or column name.
        """
        if not isinstance(other, Schema):
            return NotImplemented
        merged = Schema(dict(self._entries))
        merged.add_entries(other._entries)
        return merged

    def __repr__(self) -> str:
        return f"{type(self).__name__}(" + ", ".join(f"{k}={v}" for k, v in self._entries.items()) + ")"

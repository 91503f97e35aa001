import numpy as np
import pandas as pd
import pytest

from magflow.schemas.base import ColName, Schema, SchemaEntry


class SchemaXY(Schema):
    X: SchemaEntry = SchemaEntry("x", np.float64, docstring="Abscissa.")
    Y: SchemaEntry = SchemaEntry("y", np.int64)


class SchemaXYZ(SchemaXY):
    Z: SchemaEntry = SchemaEntry("z", str)


class TestColName:
    @pytest.mark.parametrize("name", ("q_0", "F_12", "S_free", "t"))
    def test_col_name(self, name):
        assert ColName(name) == name
        assert repr(ColName(name)) == f"ColName({name!r})"

    @pytest.mark.parametrize("name", ("", "max drift", "f-residual", "psi(t)"))
    def test_invalid(self, name):
        with pytest.raises(ValueError):
            ColName(name)


class TestSchemaEntry:
    def test_name(self):
        entry = SchemaEntry("energy", np.float64)
        assert isinstance(entry.name, ColName)
        assert entry.name == "energy"

    def test_type(self):
        entry = SchemaEntry("energy", np.float64)
        entry.type = "float32"
        assert entry.type == "float32"
        with pytest.raises(TypeError):
            entry.type = 3

    def test_equality(self):
        assert SchemaEntry("C", np.float64, docstring="a") == SchemaEntry("C", np.float64, docstring="b")
        assert SchemaEntry("C", np.float64) != SchemaEntry("C", np.int64)
        assert len({SchemaEntry("C", np.float64), SchemaEntry("C", np.float64)}) == 1


class TestSchema:
    def test_columns(self):
        assert SchemaXYZ().columns == ["x", "y", "z"]

    def test_types(self):
        assert SchemaXY().types == [np.float64, np.int64]

    def test_items(self):
        assert list(SchemaXY().items()) == [("x", np.float64), ("y", np.int64)]

    def test_to_dict(self):
        assert SchemaXY().to_dict() == {"x": np.float64, "y": np.int64}

    def test_getitem(self):
        assert SchemaXY()["y"].type is np.int64
        with pytest.raises(KeyError):
            SchemaXY()["w"]

    def test_add_entries(self):
        schema = SchemaXY({"W": SchemaEntry("w", bool)})
        assert schema.columns == ["x", "y", "w"]
        with pytest.raises(ValueError, match="duplicate column name"):
            schema.add_entries({"X2": SchemaEntry("x", np.float64)})
        with pytest.raises(ValueError, match="duplicate attribute name"):
            schema.add_entries({"X": SchemaEntry("x2", np.float64)})
        with pytest.raises(TypeError):
            schema.add_entries({"V": "v"})

    def test_to_new_dframe(self):
        frame = SchemaXYZ().to_new_dframe()
        assert frame.empty
        assert list(frame.columns) == ["x", "y", "z"]
        assert frame["y"].dtype == np.int64

    def test_to_dframe(self):
        frame = SchemaXY().to_dframe([{"y": 1, "x": 0.5, "extra": "ignored"}, {"x": 2.0, "y": 3}])
        assert list(frame.columns) == ["x", "y"]
        assert frame["y"].dtype == np.int64
        pd.testing.assert_series_equal(frame["x"], pd.Series([0.5, 2.0], name="x"))

    def test_to_dframe_missing_column(self):
        with pytest.raises(KeyError, match="'y'"):
            SchemaXY().to_dframe([{"x": 1.0}])

    def test_combine_with_schema(self):
        merged = SchemaXY() + Schema({"Z": SchemaEntry("z", str)})
        assert merged == SchemaXYZ()
        with pytest.raises(ValueError):
            SchemaXY() + SchemaXY()

    def test_len_and_repr(self):
        assert len(SchemaXYZ()) == 3
        assert repr(SchemaXY()).startswith("SchemaXY(X=SchemaEntry(name=ColName('x')")

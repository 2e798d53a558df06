import os
import tempfile
import textwrap
import unittest
from pathlib import Path
from unittest.mock import patch

from sparse_trace.config.common.families import (
    DilatedSimplexFamily,
    ExplicitFamily,
    RectangleFamily,
    TruncatedSimplexFamily,
    simplex_points,
)
from sparse_trace.config.common.loader import SEED_VARIABLE, load_settings, read_json, read_yaml, resolve_seed
from sparse_trace.config.common.standard import CommonSupportStandard, load_families
from sparse_trace.config.models.settings import TrackerConfig, TraceTestConfig
from sparse_trace.err import ConfigError, SerializationError


class _TempDirCase(unittest.TestCase):
    def setUp(self):
        """
        Set up the test case with a scratch directory.
        """
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name: str, text: str) -> Path:
        path = self.tmp / name
        path.write_text(textwrap.dedent(text), encoding="utf-8")
        return path


# Unit test for the settings models

class TestSettingsModels(unittest.TestCase):
    def test_defaults(self):
        """
        Test the default tolerances.
        """
        config = TraceTestConfig()
        self.assertEqual(config.rel_tol, 1e-6)
        self.assertEqual(config.genericity, "auto")
        self.assertEqual(config.tracker.jobs, 1)

    def test_invalid_tracker(self):
        """
        Test the tracker validators.
        """
        for bad in ({"jobs": 0}, {"step_contract": 1.0}, {"step_expand": 1.0}, {"min_step": 0.1, "initial_step": 0.05}):
            with self.assertRaises(ValueError, msg=bad):
                TrackerConfig(**bad)

    def test_frozen(self):
        """
        Test that validated settings cannot be mutated.
        """
        config = TrackerConfig()
        with self.assertRaises(ValueError):
            config.jobs = 3


# Unit test for load_settings

class TestLoadSettings(_TempDirCase):
    def test_defaults_without_file(self):
        """
        Test that no file gives the defaults.
        """
        settings = load_settings()
        self.assertEqual(settings.solver.attempts, 3)

    def test_tracker_propagates(self):
        """
        Test that a top level tracker block reaches the nested ones.
        """
        path = self.write(
            "settings.yaml",
            """
            tracker:
              jobs: 4
            trace_test:
              tracker:
                initial_step: 0.02
            """,
        )
        settings = load_settings(path)
        self.assertEqual(settings.tracker.jobs, 4)
        self.assertEqual(settings.solver.tracker.jobs, 4)
        self.assertEqual(settings.trace_test.tracker.jobs, 4)
        self.assertEqual(settings.trace_test.tracker.initial_step, 0.02)

    def test_overrides(self):
        """
        Test that overrides win over the file.
        """
        path = self.write("settings.yaml", "trace_test:\n  rel_tol: 1.0e-4\n")
        settings = load_settings(path, {"trace_test": {"rel_tol": 1e-5}, "tracker": {"jobs": 2}})
        self.assertEqual(settings.trace_test.rel_tol, 1e-5)
        self.assertEqual(settings.trace_test.tracker.jobs, 2)

    def test_invalid_values(self):
        """
        Test that validation errors become ConfigError.
        """
        path = self.write("settings.yaml", "trace_test:\n  genericity: always\n")
        with self.assertRaises(ConfigError):
            load_settings(path)
        with self.assertRaises(ConfigError):
            load_settings(overrides={"tracker": {"unknown": 1}})

    def test_not_a_mapping(self):
        """
        Test that a YAML list is refused.
        """
        with self.assertRaises(ConfigError):
            load_settings(self.write("settings.yaml", "- 1\n- 2\n"))

    def test_missing_file(self):
        """
        Test that an unreadable settings file is a ConfigError.
        """
        with self.assertRaises(ConfigError):
            load_settings(self.tmp / "missing.yaml")


# Unit test for the file readers

class TestReaders(_TempDirCase):
    def test_malformed_yaml(self):
        """
        Test that YAML syntax errors carry the line.
        """
        path = self.write("bad.yaml", "a: [1, 2\nb: 3\n")
        with self.assertRaises(SerializationError) as ctx:
            read_yaml(path)
        self.assertIsNotNone(ctx.exception.context["line"])

    def test_malformed_json(self):
        """
        Test that JSON syntax errors carry the line.
        """
        path = self.write("bad.json", '{\n  "supports": [1,\n}\n')
        with self.assertRaises(SerializationError) as ctx:
            read_json(path)
        self.assertEqual(ctx.exception.context["line"], 3)

    def test_missing_json(self):
        """
        Test that an unreadable input file is a SerializationError.
        """
        with self.assertRaises(SerializationError):
            read_json(self.tmp / "missing.json")


# Unit test for resolve_seed

class TestResolveSeed(unittest.TestCase):
    def test_explicit_wins(self):
        """
        Test that an explicit seed ignores the environment.
        """
        with patch.dict(os.environ, {SEED_VARIABLE: "9"}):
            self.assertEqual(resolve_seed(4), 4)

    def test_environment(self):
        """
        Test reading the seed from the environment.
        """
        with patch.dict(os.environ, {SEED_VARIABLE: "9"}):
            self.assertEqual(resolve_seed(), 9)
        with patch.dict(os.environ, {SEED_VARIABLE: ""}):
            self.assertEqual(resolve_seed(), 0)

    def test_bad_environment(self):
        """
        Test that a non-integer seed is refused.
        """
        with patch.dict(os.environ, {SEED_VARIABLE: "seven"}):
            with self.assertRaises(ConfigError):
                resolve_seed()


# Unit test for the built-in families

class TestFamilies(unittest.TestCase):
    def test_simplex_points(self):
        """
        Test the dilated simplex with and without a floor.
        """
        self.assertEqual(len(simplex_points(2, 2)), 6)
        self.assertEqual(len(simplex_points(5, 2, floor=4)), 11)

    def test_dilated_simplex(self):
        """
        Test the default and overridden degrees.
        """
        family = DilatedSimplexFamily()
        self.assertEqual(family.build().ambient_dim, 2)
        self.assertEqual(len(family.build(degrees=[1, 1, 1])), 3)
        with self.assertRaises(ConfigError):
            family.build(degrees=[0, 2])

    def test_rectangles(self):
        """
        Test the rectangle family.
        """
        collection = RectangleFamily().build(shapes=[[3, 2], [2, 3]])
        self.assertEqual(len(collection[0]), 12)
        with self.assertRaises(ConfigError):
            RectangleFamily().build(shapes=[[1, 1]])

    def test_truncated_simplex(self):
        """
        Test dropping the low degree monomials.
        """
        collection = TruncatedSimplexFamily().build()
        self.assertTrue(all(sum(p) >= 4 for p in collection[0].points))
        with self.assertRaises(ConfigError):
            TruncatedSimplexFamily().build(drop=5)

    def test_explicit(self):
        """
        Test that an explicit family needs supports.
        """
        with self.assertRaises(ConfigError):
            ExplicitFamily("empty")
        family = ExplicitFamily("line", supports=[[[0], [1]]], tags=("small",))
        self.assertTrue(family.has_tag("small"))
        self.assertEqual(family.serialize()["family"], "ExplicitFamily")


# Unit test for CommonSupportStandard

class TestCommonSupportStandard(_TempDirCase):
    def setUp(self):
        """
        Set up the test case with the shared registry.
        """
        super().setUp()
        self.standard = CommonSupportStandard()

    def test_singleton(self):
        """
        Test that the registry is shared.
        """
        self.assertIs(CommonSupportStandard(), self.standard)

    def test_builtins_and_gallery(self):
        """
        Test that built-in and shipped families are registered.
        """
        for name in ("dilated_simplex", "rectangles", "truncated_simplex", "pencil", "dense_quintics"):
            self.assertIn(name, self.standard)
        self.assertEqual(self.standard["dense"].name, "dilated_simplex")
        self.assertIn("pencil", [f.name for f in self.standard.tagged("corpus")])
        self.assertEqual(len(self.standard.build("pencil")[0]), 12)

    def test_unknown(self):
        """
        Test that an unknown name is a ConfigError listing the known ones.
        """
        with self.assertRaises(ConfigError) as ctx:
            self.standard.build("no_such_family")
        self.assertIn("pencil", ctx.exception.context["known"])

    def test_load_file(self):
        """
        Test registering families from a user file.
        """
        path = self.write(
            "families.yaml",
            """
            families:
              - name: user_lines
                family: explicit
                tags: [user]
                params:
                  supports:
                    - [[0, 0], [1, 0], [0, 1]]
                    - [[0, 0], [1, 0], [0, 1]]
            """,
        )
        self.standard.load_file(path)
        self.assertEqual(len(self.standard.build("user_lines")), 2)
        self.assertEqual([f.name for f in self.standard.tagged("user")], ["user_lines"])

    def test_load_families_errors(self):
        """
        Test that malformed family files are ConfigError.
        """
        duplicate = self.write(
            "dup.yaml",
            """
            families:
              - {name: a, family: rectangles}
              - {name: a, family: rectangles}
            """,
        )
        unknown_type = self.write("type.yaml", "families:\n  - {name: b, family: hexagons}\n")
        malformed = self.write(
            "bad.yaml",
            """
            families:
              - name: c
                family: explicit
                params:
                  supports:
                    - [[0, 0], [0, 0]]
            """,
        )
        for path in (duplicate, unknown_type, malformed):
            with self.assertRaises(ConfigError, msg=path.name):
                load_families(path)

    def test_describe(self):
        """
        Test the listing payload.
        """
        names = [entry["name"] for entry in self.standard.describe()]
        self.assertIn("lacunary_even", names)


if __name__ == "__main__":
    unittest.main()

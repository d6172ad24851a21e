import contextlib
import io
import json
import sys
import tempfile
import unittest
from pathlib import Path


SERVICE_DIR = Path(__file__).resolve().parents[1]
if str(SERVICE_DIR) not in sys.path:
    sys.path.append(str(SERVICE_DIR))

from main import EXIT_OK, EXIT_PARSE_ERROR, EXIT_QUERY_FAILURE, main  # noqa: E402

PROGRAMS = {
    "barbara": """
default: B ~> C
default: A ~> B
negdefault: (A | B) ~> !A
query: entails A ~> C
""",
    "darii": """
default: B ~> C
negdefault: A ~> !B
negdefault: (A | B) ~> !A
query: notentails A ~> !C
""",
    "transitivity": """
default: B ~> C
default: A ~> B
query: entails A ~> C
query: notentails A ~> C
""",
    "cautious": """
default: A ~> C
default: A ~> B
query: entails A & B ~> C
""",
    "bounds": """
query: bounds [C : A] from [C : B]=4/5, [B : A]=9/10, [A : (A | B)]=1/2
query: bounds [C : (A & B)] from [C : A]=4/5, [B : A]=9/10
""",
    "extension": """
default: B ~> C
default: A ~> B
negdefault: (A | B) ~> !A
query: extension [C : A]
""",
}


class CommandLineTests(unittest.TestCase):
    def setUp(self):
        self.workdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.workdir.cleanup()

    def run_cli(self, text: str, *flags: str):
        path = Path(self.workdir.name) / "program.kb"
        path.write_text(text, encoding="utf-8")
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = main([str(path), "--budget", "60", *flags])
        return code, stdout.getvalue(), stderr.getvalue()

    def run_json(self, name: str, *flags: str):
        code, out, _ = self.run_cli(PROGRAMS[name], "--json", *flags)
        return code, json.loads(out)

    def test_barbara_is_certified(self):
        code, report = self.run_json("barbara")
        self.assertEqual(code, EXIT_OK)
        result = report["results"][0]
        self.assertEqual(result["status"], "ENTAILED")
        self.assertEqual(result["certificate"]["rule"], "Modus Barbara")

    def test_darii_is_certified(self):
        _, report = self.run_json("darii")
        self.assertEqual(report["results"][0]["certificate"]["rule"], "Modus Darii")

    def test_transitivity_counterexample(self):
        code, report = self.run_json("transitivity")
        self.assertEqual(code, EXIT_OK)
        sure, below_one = report["results"]
        self.assertEqual((sure["status"], below_one["status"]), ("NOT_ENTAILED", "NOT_ENTAILED"))
        self.assertEqual(sure["counterexample"], {"point": ["1", "1"], "z": "0"})
        self.assertEqual(below_one["counterexample"], {"point": ["1", "1"], "z": "1"})

    def test_cautious_monotonicity(self):
        _, report = self.run_json("cautious")
        self.assertEqual(report["results"][0]["certificate"]["rule"], "Cautious Monotonicity")

    def test_bounds(self):
        _, report = self.run_json("bounds")
        transitivity, monotonicity = report["results"]
        self.assertEqual((transitivity["z_lo"], transitivity["z_hi"]), ("13/25", "1"))
        self.assertEqual((monotonicity["z_lo"], monotonicity["z_hi"]), ("7/9", "8/9"))

    def test_extension_inner_within_outer(self):
        _, report = self.run_json("extension")
        result = report["results"][0]
        self.assertEqual(result["outer"]["text"], "[0, 1]")
        self.assertEqual([piece["interval"]["text"] for piece in result["inner"]], ["[1, 1]"])

    def test_same_seed_same_bytes(self):
        _, first, _ = self.run_cli(PROGRAMS["transitivity"], "--json", "--seed", "3")
        _, second, _ = self.run_cli(PROGRAMS["transitivity"], "--json", "--seed", "3")
        self.assertEqual(first, second)

    def test_trace_flag(self):
        _, report = self.run_json("bounds", "--trace")
        self.assertTrue(report["results"][0]["trace"])

    def test_text_output(self):
        code, out, _ = self.run_cli(PROGRAMS["barbara"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("status: ENTAILED", out)

    def test_parse_error_exit_code(self):
        code, out, err = self.run_cli("default: A ~> B\n")
        self.assertEqual(code, EXIT_PARSE_ERROR)
        self.assertEqual(out, "")
        self.assertIn("no query", err)

    def test_query_failure_exit_code(self):
        code, out, _ = self.run_cli("query: pconsistent\n", "--json")
        self.assertEqual(code, EXIT_QUERY_FAILURE)
        self.assertFalse(json.loads(out)["results"][0]["success"])

    def test_undecodable_file_is_a_parse_error(self):
        path = Path(self.workdir.name) / "binary.kb"
        path.write_bytes(b"default: A ~> B\nquery: pconsistent # \xff\xfe\n")
        stderr = io.StringIO()
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(stderr):
            code = main([str(path)])
        self.assertEqual(code, EXIT_PARSE_ERROR)
        self.assertIn("binary.kb", stderr.getvalue())

    def test_deep_nesting_exit_code(self):
        nested = "(" * 2000 + "A" + ")" * 2000
        code, out, err = self.run_cli(f"default: {nested} ~> B\nquery: pconsistent\n")
        self.assertEqual(code, EXIT_PARSE_ERROR)
        self.assertEqual(out, "")
        self.assertIn("line 1", err)

    def test_missing_file(self):
        stderr = io.StringIO()
        with contextlib.redirect_stderr(stderr):
            code = main([str(Path(self.workdir.name) / "absent.kb")])
        self.assertEqual(code, EXIT_PARSE_ERROR)


if __name__ == "__main__":
    unittest.main()

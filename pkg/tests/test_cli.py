import json
import multiprocessing
import queue
from pathlib import Path

import pytest

from algebra.stdbasis import Ideal
from app.core.config import build_settings
from app.main import build_parser, main, settings_from_args
from app.services import emit_all, parse_script, reproduction, run_source
from app.services.reproduction import run_reproduction
from app.services.session import EXIT_CHECK_FAILED, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE

SCRIPTS = Path(__file__).parent.parent / "scripts"

HYPERSURFACE = """
ring A = k[x] local / (x^3);
module K = residue();
check betti(K, 4) == [1, 1, 1, 1, 1];
"""


@pytest.fixture
def settings():
    return build_settings(LOG_LEVEL="ERROR")


def run(text, settings, fail_fast=False):
    return run_source(text, settings, fail_fast=fail_fast)


class TestParser:
    def test_statements_and_positions(self):
        script = parse_script("ring A = k[x,y];\n  show mingens(ideal(x, x^2));")
        assert [s.keyword for s in script.statements] == ["ring", "show"]
        assert (script.statements[1].line, script.statements[1].column) == (2, 3)

    def test_comments_are_ignored(self):
        assert parse_script("# nothing here\n").statements == []

    def test_missing_semicolon(self, settings):
        summary = run("ring A = k[x];\nshow ideal(x)", settings)
        assert summary.exit_code == EXIT_USAGE
        assert summary.records[0].kind == "error"
        assert "line 2" in summary.records[0].payload["error"]

    def test_unknown_statement(self, settings):
        summary = run("ring A = k[x];\nprint x;", settings)
        assert summary.exit_code == EXIT_USAGE
        assert "line 2, column 1" in summary.records[0].payload["error"]

    def test_name_bound_twice(self, settings):
        summary = run("ring A = k[x];\nideal I = ideal(x);\nideal I = ideal(x^2);", settings)
        assert summary.exit_code == EXIT_USAGE


class TestSession:
    def test_empty_script(self, settings):
        summary = run("", settings)
        assert summary.exit_code == EXIT_OK
        assert summary.records == []

    def test_betti_check_passes(self, settings):
        summary = run(HYPERSURFACE, settings)
        assert summary.exit_code == EXIT_OK
        assert summary.checks_total == 1
        assert summary.records[0].check.passed

    def test_failed_check(self, settings):
        summary = run("ring A = k[x,y];\ncheck size(mingens(ideal(x, x^2))) == 2;", settings)
        assert summary.exit_code == EXIT_CHECK_FAILED
        assert summary.checks_failed == 1

    def test_fail_fast_stops_at_first_failure(self, settings):
        text = "ring A = k[x,y];\ncheck krull() == 1;\ncheck krull() == 3;"
        assert run(text, settings).checks_total == 2
        assert run(text, settings, fail_fast=True).checks_total == 1

    def test_precondition_aborts(self, settings):
        text = "ring A = k[x,y];\nmodule M = coker(x);\nshow link(M, ideal(y));\nshow krull();"
        summary = run(text, settings)
        assert summary.exit_code == EXIT_PRECONDITION
        assert len(summary.records) == 1
        assert summary.records[0].kind == "error"
        assert "AnnihilatorError" in summary.records[0].payload["error"]

    def test_unknown_function(self, settings):
        summary = run("ring A = k[x];\nshow frobnicate(x);", settings)
        assert summary.exit_code == EXIT_USAGE

    def test_polynomial_bindings_and_membership(self, settings):
        text = "ring A = k[x,y];\npoly f = x + x^2;\ncheck member(x, ideal(f));\ncheck x*y in ideal(x);"
        summary = run(text, settings)
        assert summary.exit_code == EXIT_OK
        assert summary.checks_total == 2

    def test_quotient_of_declared_ring(self, settings):
        text = "ring A = k[x,y];\nring B = A / ideal(x^2, y^2);\ncheck length() == 4;\ncheck gorenstein();"
        assert run(text, settings).exit_code == EXIT_OK

    def test_settings_order_applies_without_order_word(self):
        summary = run("ring A = k[x];\nshow krull();", build_settings(ORDER="grevlex", LOG_LEVEL="ERROR"))
        assert summary.records[0].provenance.order == "grevlex"

    def test_complexity_compares_by_class(self, settings):
        text = "ring A = k[x,y] local / (x^2, y^2);\nmodule K = residue();\ncheck cx(K) == 2;\ncheck cx(K) != 1;"
        assert run(text, settings).exit_code == EXIT_OK

    def test_module_equality_uses_configured_bounds(self, settings):
        text = (
            "ring A = k[x];\nmodule M = coker([x^7, 0], [0, x^5]);\n"
            "module N = coker([x^7, 0], [0, x^6]);\ncheck M != N;"
        )
        assert run(text, settings).exit_code == EXIT_OK
        shallow = settings.model_copy(update={"FILTRATION_BOUND": 4})
        assert run(text, shallow).exit_code == EXIT_CHECK_FAILED

    def test_provenance(self, settings):
        summary = run("ring A = GF(101)[x];\nshow krull();", settings.model_copy(update={"SEED": 5}))
        provenance = summary.records[0].provenance
        assert provenance.characteristic == 101
        assert provenance.seed == 5
        assert provenance.bounds.resolution == settings.RESOLUTION_BOUND


class TestOutput:
    def test_json_output_is_deterministic(self, settings):
        first = emit_all(run(HYPERSURFACE, settings).records, "json")
        second = emit_all(run(HYPERSURFACE, settings).records, "json")
        assert first == second
        record = json.loads(first.decode("utf-8").splitlines()[0])
        assert set(record) == {"kind", "payload", "provenance", "check"}
        assert record["check"]["pass"] is True

    def test_text_output_marks_checks(self, settings):
        text = emit_all(run(HYPERSURFACE, settings).records, "text").decode("utf-8")
        assert "PASS" in text


class TestMain:
    def test_schema(self, capsys):
        assert main(["schema"]) == EXIT_OK
        schema = json.loads(capsys.readouterr().out)
        assert "provenance" in schema["properties"]

    def test_run_script_file(self, tmp_path, capsys):
        path = tmp_path / "hypersurface.alg"
        path.write_text(HYPERSURFACE, encoding="utf-8")
        assert main(["run", str(path), "--json", "--log-level", "ERROR"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 1
        assert json.loads(lines[0])["kind"] == "value"

    def test_missing_script(self, tmp_path):
        assert main(["run", str(tmp_path / "missing.alg")]) == EXIT_USAGE

    def test_bad_characteristic(self, tmp_path):
        path = tmp_path / "empty.alg"
        path.write_text("", encoding="utf-8")
        assert main(["run", str(path), "--char", "4"]) == EXIT_USAGE

    def test_bound_sets_window(self):
        args = build_parser().parse_args(["run", "x.alg", "--bound", "5"])
        settings = settings_from_args(args)
        assert settings.RESOLUTION_BOUND == 5
        assert settings.WINDOW == (2, 5)

    @pytest.mark.parametrize("name", ["calibration.alg", "cone.alg"])
    def test_canned_scripts(self, name, capsys):
        assert main(["run", str(SCRIPTS / name), "--log-level", "ERROR"]) == EXIT_OK
        assert "FAIL" not in capsys.readouterr().out


class TestDeepStage:
    def fail(self, characteristic, lifted_gens):
        raise RuntimeError("worker crashed")

    def test_worker_reports_any_exception(self, monkeypatch):
        monkeypatch.setattr(reproduction, "deep_stage", self.fail)
        out = queue.Queue()
        reproduction._deep_worker(32003, [], out)
        assert out.get_nowait() == ("error", "RuntimeError: worker crashed")

    def test_dead_worker_is_an_error(self):
        class Dead:
            exitcode = -9

            def is_alive(self):
                return False

        status, message = reproduction._await_worker(Dead(), queue.Queue(), timeout=60)
        assert status == "error"
        assert "-9" in message

    @pytest.mark.skipif(multiprocessing.get_start_method() != "fork", reason="needs the patched module in the child")
    def test_crash_fails_the_run_instead_of_skipping(self, settings, monkeypatch):
        monkeypatch.setattr(reproduction, "deep_stage", self.fail)
        pipeline = reproduction.Pipeline(settings)
        error = reproduction.run_deep(pipeline, Ideal.of(reproduction.base_ring(32003), []), timeout=60)
        assert error == "RuntimeError: worker crashed"
        assert not any(r.payload.get("status") == "skipped" for r in pipeline.records)


@pytest.mark.slow
class TestReproduction:
    PUBLISHED_COUNTS = {"size(mingens(I)) == 12", "size(mingens(Q)) in [12, 13]", "inpower(I, 6)"}

    @pytest.mark.parametrize("name", ["counterexample.alg", "containments.alg"])
    def test_scripts_run_to_completion(self, name, settings):
        summary = run((SCRIPTS / name).read_text(encoding="utf-8"), settings)
        assert summary.exit_code in (EXIT_OK, EXIT_CHECK_FAILED)
        assert all(record.kind != "error" for record in summary.records)

    def test_generators_contain_the_pure_powers(self, settings):
        summary = run((SCRIPTS / "counterexample.alg").read_text(encoding="utf-8"), settings)
        checks = {r.check.expr: r for r in summary.records if r.check is not None}
        assert checks["subset(ideal(x^7, y^7), G)"].check.passed
        assert summary.records[0].payload["size"] == summary.records[1].payload["value"]

    def test_pipeline(self, settings):
        summary = run_reproduction(settings, deep=False)
        assert all(record.kind != "error" for record in summary.records)
        checks = [r.check for r in summary.records if r.check is not None]
        assert len(checks) == summary.checks_total == 6
        assert all(check.passed for check in checks if check.expr not in self.PUBLISHED_COUNTS)
        assert summary.exit_code == (EXIT_CHECK_FAILED if summary.checks_failed else EXIT_OK)

    @pytest.mark.xfail(reason="the published generator counts are not reproduced by the local computation", strict=False)
    def test_published_counts(self, settings):
        assert run_reproduction(settings, deep=False).exit_code == EXIT_OK

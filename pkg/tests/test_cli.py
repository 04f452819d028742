import json

from toricsplit.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, *argv)
    return status, json.loads(out)


class TestVariety:
    def test_info_tower3(self, capsys):
        status, report = run_json(capsys, "variety", "info", "Xd:3")
        assert status == 0
        result = report["result"]
        assert result["rays"] == 8
        assert result["max_cones"] == 12
        assert result["picard_rank"] == 5
        assert result["fano"] is True

    def test_export_then_reimport_agrees(self, capsys, tmp_path):
        status, report = run_json(capsys, "variety", "export", "dP:3")
        assert status == 0
        fan_file = tmp_path / "fan.json"
        fan_file.write_text(json.dumps(report["result"]))
        s1, out1, _ = run(capsys, "bondal", "check", "--variety", "dP:3")
        s2, out2, _ = run(capsys, "bondal", "check", "--fan", str(fan_file))
        assert s1 == s2 == 0
        r1 = json.loads(out1)["result"]
        r2 = json.loads(out2)["result"]
        assert r1 == r2

    def test_bad_descriptor(self, capsys):
        status, _, err = run(capsys, "variety", "info", "Xd:4")
        assert status == 2
        assert "error" in err

    def test_info_from_fan_file(self, capsys, tmp_path):
        _, report = run_json(capsys, "variety", "export", "P:2")
        fan_file = tmp_path / "p2.json"
        fan_file.write_text(json.dumps(report["result"]))
        status, report = run_json(capsys, "variety", "info",
                                  "--fan", str(fan_file))
        assert status == 0
        assert report["result"]["picard_rank"] == 1
        # descriptor and --fan are mutually exclusive
        assert main(["variety", "info", "P:2", "--fan", str(fan_file)]) == 2
        capsys.readouterr()


class TestFrobenius:
    def test_split_p1(self, capsys):
        status, report = run_json(capsys, "frobenius", "split",
                                  "--variety", "P:1", "--p", "3")
        assert status == 0
        result = report["result"]
        assert result["p"] == 3
        assert result["n"] == 1
        assert sum(c["multiplicity"] for c in result["classes"]) == 3
        # classes sorted lexicographically by representative
        reps = [c["representative"] for c in result["classes"]]
        assert reps == sorted(reps)

    def test_split_tower3(self, capsys):
        status, report = run_json(capsys, "frobenius", "split",
                                  "--variety", "Xd:3", "--p", "5")
        assert status == 0
        result = report["result"]
        assert len(result["classes"]) == 12
        assert sum(c["multiplicity"] for c in result["classes"]) == 125

    def test_verify(self, capsys):
        status, report = run_json(capsys, "frobenius", "verify",
                                  "--variety", "dP:3", "--p", "3")
        assert status == 0
        assert report["result"]["multiplicity_ok"] is True
        assert report["result"]["c1_ok"] is True

    def test_divisor_file(self, capsys, tmp_path):
        div = tmp_path / "d.json"
        div.write_text(json.dumps({"coeffs": [1, 1]}))
        status, report = run_json(capsys, "frobenius", "split", "--variety", "P:1",
                                  "--p", "2", "--divisor", str(div),
                                  "--no-stabilization-check")
        assert status == 0
        assert len(report["result"]["classes"]) == 2

    def test_bad_p(self, capsys):
        status, _, err = run(capsys, "frobenius", "split",
                             "--variety", "P:1", "--p", "0")
        assert status == 2


class TestBondal:
    def test_f2_fails_exit_one(self, capsys):
        status, report = run_json(capsys, "bondal", "check", "--variety", "F2")
        assert status == 1
        result = report["result"]
        assert result["pass"] is False
        assert any(-2 in v["coeffs"] for v in result["violations"])

    def test_tower3_passes(self, capsys):
        status, report = run_json(capsys, "bondal", "check", "--variety", "Xd:3")
        assert status == 0
        assert report["result"]["walls"] == 18
        assert report["result"]["violations"] == []


class TestCohomology:
    def test_compute(self, capsys, tmp_path):
        div = tmp_path / "d.json"
        div.write_text(json.dumps({"coeffs": [-1, -1]}))
        status, report = run_json(capsys, "cohomology", "compute",
                                  "--variety", "P:1", "--divisor", str(div))
        assert status == 0
        assert report["result"]["dims"] == [0, 1]
        assert report["result"]["box"] >= 1

    def test_box_override(self, capsys, tmp_path):
        div = tmp_path / "d.json"
        div.write_text(json.dumps({"coeffs": [1, 1]}))
        status, report = run_json(capsys, "cohomology", "compute",
                                  "--variety", "P:1", "--divisor", str(div),
                                  "--box", "7")
        assert status == 0
        assert report["result"] == {"dims": [3, 0], "box": 7}


class TestCollection:
    def write_collection(self, tmp_path, bundles, name="c.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"bundles": [list(b) for b in bundles]}))
        return str(path)

    def test_verify_pass(self, capsys, tmp_path):
        coll = self.write_collection(tmp_path, [(0, 0), (0, 1)])
        status, report = run_json(capsys, "collection", "verify",
                                  "--variety", "P:1", "--collection", coll)
        assert status == 0
        assert report["result"]["pass"] is True

    def test_verify_fail(self, capsys, tmp_path):
        coll = self.write_collection(tmp_path, [(0, 1), (0, 0)])
        status, report = run_json(capsys, "collection", "verify",
                                  "--variety", "P:1", "--collection", coll)
        assert status == 1
        assert report["result"]["pass"] is False

    def test_order(self, capsys, tmp_path):
        coll = self.write_collection(tmp_path, [(0, 1), (0, 0)])
        status, report = run_json(capsys, "collection", "order",
                                  "--variety", "P:1", "--collection", coll)
        assert status == 0
        assert report["result"]["order"] == [[0, 0], [0, 1]]

    def test_order_failure(self, capsys, tmp_path):
        coll = self.write_collection(tmp_path, [(0, 0), (0, 2)])
        status, report = run_json(capsys, "collection", "order",
                                  "--variety", "P:1", "--collection", coll)
        assert status == 1
        assert report["result"]["ok"] is False

    def test_product(self, capsys, tmp_path):
        c1 = self.write_collection(tmp_path, [(0, 0), (0, 1)], "c1.json")
        c2 = self.write_collection(tmp_path, [(0, 0), (0, 1)], "c2.json")
        status, report = run_json(capsys, "collection", "product",
                                  "--variety", "P:1", "--collection", c1,
                                  "--variety2", "P:1", "--collection2", c2)
        assert status == 0
        assert len(report["result"]["bundles"]) == 4
        assert report["result"]["fan"]["dim"] == 2


class TestInterface:
    def test_byte_identical_json(self, capsys):
        _, out1, _ = run(capsys, "frobenius", "split", "--variety", "Xd:3",
                         "--p", "5", "--format", "json")
        _, out2, _ = run(capsys, "frobenius", "split", "--variety", "Xd:3",
                         "--p", "5", "--format", "json")
        assert out1 == out2

    def test_table_format(self, capsys):
        status, out, _ = run(capsys, "variety", "info", "P:2",
                             "--format", "table")
        assert status == 0
        assert "picard_rank: 1" in out

    def test_usage_error_exit_2(self, capsys):
        assert main(["frobenius", "split"]) == 2          # no fan source
        assert main(["no-such-command"]) == 2
        assert main(["frobenius", "split", "--variety", "P:1",
                     "--fan", "x.json"]) == 2             # both sources

    def test_missing_file(self, capsys):
        status, _, err = run(capsys, "cohomology", "compute", "--variety", "P:1",
                             "--divisor", "/nonexistent/d.json")
        assert status == 2

    def test_threads_flag_accepted(self, capsys):
        status, _, _ = run(capsys, "variety", "info", "P:1", "--threads", "4")
        assert status == 0

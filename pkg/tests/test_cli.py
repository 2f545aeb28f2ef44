import json
import math

import pytest

from streamscale.cli import (
    EXIT_DIMS,
    EXIT_IO,
    EXIT_OK,
    EXIT_PGM,
    EXIT_USAGE,
    main,
)
from streamscale.imagecore import Image, load_pgm, save_pgm


@pytest.fixture
def sample(tmp_path):
    img = Image.from_pixels(
        16, 12, [(x * 13 + y * 29) % 256 for y in range(12) for x in range(16)]
    )
    path = tmp_path / "in.pgm"
    save_pgm(path, img)
    return path, img


class TestScale:
    def test_basic_2x(self, sample, tmp_path, capsys):
        path, _ = sample
        out = tmp_path / "out.pgm"
        rc = main(["scale", str(path), str(out), "--method", "bicubic",
                   "--mode", "fixed", "--num", "2", "--den", "1",
                   "--format", "json"])
        assert rc == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["out_width"] == 32 and report["out_height"] == 24
        assert report["frac_bits"] == 8
        result = load_pgm(out)
        assert (result.width, result.height) == (32, 24)

    def test_deterministic_reruns(self, sample, tmp_path):
        path, _ = sample
        a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
        args = ["--method", "bilinear", "--mode", "fixed", "--num", "3", "--den", "2"]
        assert main(["scale", str(path), str(a)] + args) == EXIT_OK
        assert main(["scale", str(path), str(b)] + args) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_num_zero_is_usage_error(self, sample, tmp_path, capsys):
        path, _ = sample
        out = tmp_path / "never.pgm"
        rc = main(["scale", str(path), str(out), "--method", "bicubic",
                   "--mode", "fixed", "--num", "0", "--den", "1"])
        capsys.readouterr()
        assert rc == EXIT_USAGE
        assert not out.exists()

    def test_frac_bits_with_exact_rejected(self, sample, tmp_path, capsys):
        path, _ = sample
        rc = main(["scale", str(path), str(tmp_path / "x.pgm"), "--method", "bicubic",
                   "--mode", "exact", "--num", "2", "--den", "1", "--frac-bits", "8"])
        capsys.readouterr()
        assert rc == EXIT_USAGE

    def test_missing_input_is_io_error(self, tmp_path, capsys):
        rc = main(["scale", str(tmp_path / "nope.pgm"), str(tmp_path / "o.pgm"),
                   "--method", "bilinear", "--mode", "fixed", "--num", "2", "--den", "1"])
        capsys.readouterr()
        assert rc == EXIT_IO

    def test_malformed_pgm(self, tmp_path, capsys):
        bad = tmp_path / "bad.pgm"
        bad.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
        rc = main(["scale", str(bad), str(tmp_path / "o.pgm"),
                   "--method", "bilinear", "--mode", "fixed", "--num", "2", "--den", "1"])
        capsys.readouterr()
        assert rc == EXIT_PGM


class TestCompare:
    def test_identical_files(self, sample, capsys):
        path, _ = sample
        rc = main(["compare", str(path), str(path), "--format", "json"])
        assert rc == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["psnr_db"] is None  # infinite-PSNR sentinel in JSON
        assert report["ssim"] == 1.0

    def test_json_schema_is_flat_and_stable(self, sample, capsys):
        path, _ = sample
        assert main(["compare", str(path), str(path), "--format", "json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert set(report) == {"ref", "test", "width", "height", "psnr_db", "ssim"}
        assert all(not isinstance(v, (dict, list)) for v in report.values())

    def test_text_identical_reports_inf(self, sample, capsys):
        path, _ = sample
        assert main(["compare", str(path), str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "psnr_db inf" in out

    def test_fixed_vs_exact_quantization_visible(self, tmp_path, capsys):
        # 3x has non-dyadic phases (thirds), so 8-bit coefficients cannot be
        # exact and the two modes must differ measurably
        rng_img = Image.from_pixels(
            32, 32, [(x * x + 3 * y) % 256 for y in range(32) for x in range(32)]
        )
        src = tmp_path / "src.pgm"
        save_pgm(src, rng_img)
        fx, ex = tmp_path / "fx.pgm", tmp_path / "ex.pgm"
        base = ["--method", "bicubic", "--num", "3", "--den", "1"]
        assert main(["scale", str(src), str(fx), "--mode", "fixed"] + base) == EXIT_OK
        assert main(["scale", str(src), str(ex), "--mode", "exact"] + base) == EXIT_OK
        capsys.readouterr()
        assert main(["compare", str(ex), str(fx), "--format", "json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["psnr_db"] is not None and math.isfinite(report["psnr_db"])
        assert report["ssim"] < 1.0

    def test_dimension_mismatch_exit(self, sample, tmp_path, capsys):
        path, img = sample
        other = tmp_path / "other.pgm"
        save_pgm(other, Image.constant(8, 8, 0))
        rc = main(["compare", str(path), str(other)])
        capsys.readouterr()
        assert rc == EXIT_DIMS


def parse_csv(text):
    lines = text.strip().splitlines()
    assert lines[0] == "phase,dx,tap,exact,raw,csd"
    return [line.split(",") for line in lines[1:]]


def parse_memh(text, frac_bits):
    width = frac_bits + 2
    values = []
    for line in text.strip().splitlines():
        v = int(line, 16)
        if v >= 1 << (width - 1):
            v -= 1 << width
        values.append(v)
    return values


class TestCoeffs:
    def test_bilinear_2x_entry_count(self, capsys):
        assert main(["coeffs", "--method", "bilinear", "--num", "2", "--den", "1",
                     "--format", "csv"]) == EXIT_OK
        rows = parse_csv(capsys.readouterr().out)
        assert len(rows) == 4  # 2 phases x 2 taps

    def test_csv_memh_cross_consistency(self, capsys):
        args = ["--method", "bicubic", "--num", "3", "--den", "2", "--frac-bits", "9"]
        assert main(["coeffs", *args, "--format", "csv"]) == EXIT_OK
        rows = parse_csv(capsys.readouterr().out)
        assert main(["coeffs", *args, "--format", "memh"]) == EXIT_OK
        words = parse_memh(capsys.readouterr().out, frac_bits=9)
        assert [int(r[4]) for r in rows] == words

    def test_exact_hit_phase_row(self, capsys):
        assert main(["coeffs", "--method", "bicubic", "--num", "3", "--den", "1",
                     "--format", "csv"]) == EXIT_OK
        rows = parse_csv(capsys.readouterr().out)
        zero_phase = [r for r in rows if r[1] == "0/1"]
        assert [int(r[4]) for r in zero_phase] == [0, 256, 0, 0]

    def test_output_file(self, tmp_path, capsys):
        dest = tmp_path / "lut.csv"
        assert main(["coeffs", "--method", "bilinear", "--num", "2", "--den", "1",
                     "--format", "csv", "--output", str(dest)]) == EXIT_OK
        capsys.readouterr()
        assert dest.read_text().startswith("phase,dx,tap,exact,raw,csd")

    def test_deterministic(self, capsys):
        args = ["coeffs", "--method", "bicubic", "--num", "7", "--den", "5",
                "--format", "memh"]
        assert main(args) == EXIT_OK
        first = capsys.readouterr().out
        assert main(args) == EXIT_OK
        assert capsys.readouterr().out == first


class TestBench:
    def test_report_fields(self, capsys):
        rc = main(["bench", "--width", "32", "--height", "16", "--method", "bicubic",
                   "--mode", "fixed", "--num", "2", "--den", "1", "--format", "json"])
        assert rc == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["fill_latency"] == 3 * 32 + 4
        assert report["outputs"] == 64 * 32
        assert report["total_cycles"] == report["fill_latency"] + report["outputs"]
        assert report["adder_count"] is not None
        assert "wall_seconds" in report

    def test_bicubic_fill_exceeds_bilinear(self, capsys):
        args = ["--width", "40", "--height", "10", "--num", "2", "--den", "1",
                "--mode", "fixed", "--format", "json"]
        assert main(["bench", "--method", "bilinear", *args]) == EXIT_OK
        bil = json.loads(capsys.readouterr().out)
        assert main(["bench", "--method", "bicubic", *args]) == EXIT_OK
        bic = json.loads(capsys.readouterr().out)
        assert bic["fill_latency"] > bil["fill_latency"]

    def test_exact_mode_omits_proxies(self, capsys):
        rc = main(["bench", "--width", "16", "--height", "16", "--method", "bilinear",
                   "--mode", "exact", "--num", "3", "--den", "2", "--format", "json"])
        assert rc == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["adder_count"] is None and report["register_count"] is None

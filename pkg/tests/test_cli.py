import textwrap

import pytest

from pyseesaw.cli import main

SEARCH_CONFIG = textwrap.dedent(
    """\
    [geometry]
    l1 = 25
    l2 = 6
    l3 = 25
    t1 = 3
    t2 = 1.5
    b = 8
    thickness_assignment = swapped

    [material]
    name = resin

    [search]
    l1 = 20, 30, 3
    l2 = 4, 8, 3
    t1 = 2.5, 3.5, 3
    top_k = 3

    [constraints]
    target_ratio = 11
    """
)


def read_lines(path):
    with open(path, encoding="utf-8", newline="") as stream:
        return stream.read().split("\n")


def test_analyze_reference_sweep(tmp_path, capsys):
    csv_path = str(tmp_path / "sweep.csv")
    assert main(["analyze", "--assignment", "swapped", "--csv", csv_path]) == 0

    out = capsys.readouterr().out
    assert "theory_um" in out
    assert "A:P displacement ratio: 10.4822" in out

    lines = read_lines(csv_path)
    assert lines[0] == "force_N,active_mm,passive_um,horizontal_um,arc_shortening_um,sigma_max_MPa"
    assert len(lines) == 8 and lines[-1] == ""
    assert lines[1].split(",")[1] == "1"
    assert lines[1].split(",")[2] == "95.4"


def test_analyze_out_of_regime():
    # the printed thicknesses rotate the joint far beyond small angles at 1 mm
    assert main(["analyze"]) == 2


def test_analyze_zero_force(tmp_path):
    csv_path = str(tmp_path / "zero.csv")
    assert main(["analyze", "--force", "0", "--csv", csv_path]) == 0
    assert read_lines(csv_path)[1] == "0,0,0,0,0,0"


def test_analyze_over_strength(capsys):
    assert main(["analyze", "--assignment", "swapped", "--force", "10"]) == 2
    assert "exceed the bending strength" in capsys.readouterr().out


def test_analyze_with_fem(tmp_path):
    csv_path = str(tmp_path / "fem.csv")
    args = ["analyze", "--assignment", "swapped", "--convention", "kinematic-total", "--active-mm", "2"]
    assert main(args + ["--with-fem", "--csv", csv_path]) == 0

    header, row = read_lines(csv_path)[:2]
    assert header.endswith(",fem_passive_um")
    values = [float(v) for v in row.split(",")]
    assert values[2] == pytest.approx(values[-1], rel=1e-2)


def test_analyze_materials_both_directions(tmp_path, capsys):
    csv_path = str(tmp_path / "sweep.csv")
    plot_path = tmp_path / "sweep.pdf"
    args = ["analyze", "--assignment", "swapped", "--active-mm", "0.5", "1", "--materials", "resin", "nylon"]
    assert main(args + ["--both-directions", "--csv", csv_path, "--plot", str(plot_path)]) == 0

    out = capsys.readouterr().out
    assert "theory_um" not in out
    assert f"plot written to {plot_path}" in out
    assert plot_path.read_bytes()[:5] == b"%PDF-"

    lines = read_lines(csv_path)
    assert lines[0].startswith("material,force_N,active_mm,")
    assert len(lines) == 10 and lines[-1] == ""
    rows = [line.split(",") for line in lines[1:-1]]
    assert [row[0] for row in rows] == ["resin"] * 4 + ["nylon"] * 4
    assert [float(row[2]) for row in rows[:4]] == [0.5, 1.0, -0.5, -1.0]

    # push-up mirrors push-down; P displacement does not depend on the material
    assert float(rows[2][3]) == -float(rows[0][3])
    assert [row[3] for row in rows[:4]] == [row[3] for row in rows[4:]]


def test_analyze_rejects_both_loads():
    assert main(["analyze", "--force", "1", "--active-mm", "1"]) == 1


def test_adjudicate(tmp_path, capsys):
    csv_path = str(tmp_path / "adjudication.csv")
    assert main(["adjudicate", "--csv", csv_path]) == 0

    out = capsys.readouterr().out
    assert "verdict: swapped + kinematic-total" in out
    assert "11.19+/-0.11" in out
    assert len(read_lines(csv_path)) == 6


def test_tuning(capsys):
    assert main(["tuning", "--angle-deg", "5", "--pitch-mm", "2", "--ratio", "11"]) == 0
    out = capsys.readouterr().out
    assert "delta_z: 2.52525 um" in out
    assert "without lever: 27.7778 um" in out


def test_tuning_from_geometry(write_config, capsys):
    path = write_config(SEARCH_CONFIG)
    assert main(["tuning", "--from-geometry", "--config", path]) == 0
    assert "displacement ratio: 10.4822" in capsys.readouterr().out


def test_tuning_invalid_ratio():
    assert main(["tuning", "--ratio", "0"]) == 1


def test_surface(capsys):
    assert main(["surface", "--samples", "3"]) == 0
    lines = capsys.readouterr().out.split("\n")
    assert lines[0] == "angle_deg,pitch_mm,delta_z_um"
    assert len(lines) == 11
    assert lines[1].startswith("0.5,0.5,")


def test_surface_plot(tmp_path, capsys):
    plot_path = tmp_path / "surface.png"
    assert main(["surface", "--samples", "4", "--plot", str(plot_path)]) == 0
    assert plot_path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert capsys.readouterr().out.startswith("angle_deg,pitch_mm,delta_z_um")

    assert main(["surface", "--samples", "4", "--plot", str(tmp_path / "surface.unknown")]) == 1


def test_usaf(capsys):
    assert main(["usaf", "--group", "9", "--element", "1"]) == 0
    assert "line width 0.98 um" in capsys.readouterr().out


def test_usaf_invalid_element():
    assert main(["usaf", "--group", "9", "--element", "7"]) == 1


def test_optimize(write_config, tmp_path, capsys):
    csv_path = str(tmp_path / "ranked.csv")
    assert main(["optimize", "--config", write_config(SEARCH_CONFIG), "--csv", csv_path]) == 0

    out = capsys.readouterr().out
    assert "evaluated: 27, feasible: 18" in out
    assert "strength=9" in out

    lines = read_lines(csv_path)
    assert lines[0].split(",") == [
        "l1_mm",
        "l2_mm",
        "l3_mm",
        "t1_mm",
        "t2_mm",
        "b_mm",
        "ratio_1",
        "delta_z_um",
        "sigma_max_at_stroke_MPa",
        "parasitic_fraction_1",
        "objective_score_1",
    ]
    assert len(lines) == 20
    assert lines[1].startswith("30,8,25,3,1.5,8,11.3208,")


def test_optimize_refine(write_config, capsys):
    assert main(["optimize", "--refine", "--config", write_config(SEARCH_CONFIG)]) == 0
    lines = capsys.readouterr().out.split("\n")

    refined = next(line for line in lines if line.startswith("refined: "))
    ratio = refined[len("refined: ") :].split(", ")[6]

    # the refined lever is ranked first and goes through the frame check
    checks = lines[lines.index("frame oracle check (paper-deflection):") + 1 :]
    assert checks[0].startswith(f"  ratio {ratio} closed form, ")


def test_optimize_infeasible(write_config, capsys):
    text = SEARCH_CONFIG.replace("target_ratio = 11", "target_ratio = 11\nrequired_stroke = 50")
    assert main(["optimize", "--config", write_config(text)]) == 2
    assert "no feasible design" in capsys.readouterr().out


def test_optimize_needs_search(write_config, reference_config_text):
    assert main(["optimize", "--config", write_config(reference_config_text)]) == 1


def test_fem_validate(capsys):
    assert main(["fem-validate", "--elements", "3"]) == 0
    assert "patch tests: PASS" in capsys.readouterr().out


def test_usage_errors(tmp_path):
    assert main([]) == 1
    assert main(["analyze", "--unknown"]) == 1
    assert main(["analyze", "--config", str(tmp_path / "missing.ini")]) == 1


def test_config_errors(write_config, reference_config_text):
    assert main(["analyze", "--config", write_config("[geometry]\nl1 25\n")]) == 1
    assert main(["analyze", "--config", write_config(reference_config_text.replace("t1 = 3", "t1 = -3"))]) == 1

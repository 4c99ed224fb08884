import json

from submodbandit import ItemSet, Tabular
from submodbandit.catalog import harmonic_base
from submodbandit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bounds_text_output(capsys):
    code, out, _ = run_cli(capsys, "bounds", "15", "4", "100")
    assert code == 0
    assert "i_star       = 3" in out
    assert "stop level l = 1" in out


def test_bounds_json_output(capsys):
    code, out, _ = run_cli(capsys, "bounds", "15", "4", "1000000", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["i_star"] == 4
    assert doc["l"] == 0
    # ceil(10^4 * 15^{-2/3} * (ln 10^6)^{1/3})
    assert doc["m"] == 3946
    assert doc["lower_bound"] > 0 and doc["upper_bound"] > 0


def test_bounds_invalid_inputs(capsys):
    code, _, err = run_cli(capsys, "bounds", "4", "4", "100")
    assert code == 2
    assert "error" in err


def test_bounds_outside_lower_bound_domain(capsys):
    # the lower bound needs k <= n/3; the other evaluators still print
    code, out, _ = run_cli(capsys, "bounds", "4", "2", "10000")
    assert code == 0
    assert "n/a" in out
    assert "upper_bound" in out and "default m" in out


def test_verify_passing_instance(capsys):
    code, out, _ = run_cli(capsys, "verify", "cover15")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_failing_instance_prints_witness(capsys):
    code, out, _ = run_cli(capsys, "verify", "unique-path-8")
    assert code == 1
    assert "submodular" in out and "FAIL" in out
    assert "marginal" in out  # witness detail


def test_verify_unknown_name(capsys):
    code, _, err = run_cli(capsys, "verify", "no-such-instance")
    assert code == 2
    assert "built-ins" in err


def test_verify_spec_file(tmp_path, capsys):
    spec = harmonic_base(6, 2)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"function": spec.to_json(), "k": 2}))
    code, out, _ = run_cli(capsys, "verify", str(path))
    assert code == 0
    assert "monotone" in out


def test_instance_dump_and_roundtrip(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "instance", "harmonic-base-6-2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "set,value"
    # 1 empty + 6 singletons + 15 pairs
    assert len(lines) - 1 == 22

    # round-trip: parse the dump back into a Tabular and compare
    spec = harmonic_base(6, 2)
    table = {}
    for line in lines[1:]:
        set_text, value_text = line.rsplit(",", 1)
        mask = ItemSet.parse(set_text.strip('"')).mask
        table[mask] = float(value_text)
    tab = Tabular(6, 2, table)
    for mask, v in tab.table.items():
        assert spec.value_of_mask(mask) == v


def test_instance_cover_row(capsys):
    code, out, _ = run_cli(capsys, "instance", "cover15")
    assert code == 0
    assert '"14",0.59999999999999998' in out


def test_plot_svg(tmp_path, capsys):
    results = tmp_path / "results.csv"
    header = "policy,T,trial,seed,checkpoint_t,cum_reward,regret_opt,regret_alpha,regret_gr"
    rows = [header]
    for policy in ("etcg", "ucb_all"):
        for T in (10, 100, 1000):
            for trial in (0, 1):
                regret = {"etcg": 1.0, "ucb_all": 2.0}[policy] * T + trial
                rows.append(f"{policy},{T},{trial},1,{T},0.5,{regret},{regret},{regret}")
    results.write_text("\n".join(rows) + "\n")
    out_svg = tmp_path / "chart.svg"
    code, _, _ = run_cli(capsys, "plot", str(results), str(out_svg))
    assert code == 0
    svg = out_svg.read_text()
    assert svg.count("<polyline") == 2
    assert "etcg" in svg and "ucb_all" in svg
    assert "<path" in svg  # stderr bands


def test_plot_single_trial_zero_band(tmp_path, capsys):
    results = tmp_path / "results.csv"
    header = "policy,T,trial,seed,checkpoint_t,cum_reward,regret_opt,regret_alpha,regret_gr"
    body = ["etcg,10,0,1,10,0.5,3.0,3.0,3.0", "etcg,100,0,1,100,0.5,9.0,9.0,9.0"]
    results.write_text("\n".join([header] + body) + "\n")
    out_svg = tmp_path / "c.svg"
    code, _, _ = run_cli(capsys, "plot", str(results), str(out_svg))
    assert code == 0
    assert out_svg.read_text().count("<polyline") == 1


def test_plot_empty_csv(tmp_path, capsys):
    results = tmp_path / "results.csv"
    results.write_text("")
    code, _, err = run_cli(capsys, "plot", str(results), str(tmp_path / "x.svg"))
    assert code == 2


def test_plot_malformed_rows(tmp_path, capsys):
    results = tmp_path / "results.csv"
    header = "policy,T,trial,seed,checkpoint_t,cum_reward,regret_opt,regret_alpha,regret_gr"
    results.write_text(header + "\netcg,notanumber,0,1,10,0,0,0,0\n")
    code, _, _ = run_cli(capsys, "plot", str(results), str(tmp_path / "x.svg"))
    assert code == 2


def test_run_end_to_end(tmp_path, capsys):
    spec = harmonic_base(6, 2)
    config = {
        "function": spec.to_json(),
        "n": 6,
        "k": 2,
        "sigma": 1.0,
        "T_grid": [10],
        "policies": [{"kind": "etcg", "m": 1}],
        "trials": 1,
        "base_seed": 5,
        "checkpoints": "log",
        "output_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code, out, _ = run_cli(capsys, "run", str(path))
    assert code == 0
    results = (tmp_path / "out" / "results.csv").read_text()
    assert len(results.splitlines()) == 1 + 5  # checkpoints 1,2,4,8,10

    # rerun into another directory: byte-identical results
    code, _, _ = run_cli(capsys, "run", str(path), "--out", str(tmp_path / "out2"))
    assert code == 0
    assert (tmp_path / "out2" / "results.csv").read_text() == results


def test_run_config_error_exit_2(tmp_path, capsys):
    path = tmp_path / "config.json"
    path.write_text("{}")
    code, _, err = run_cli(capsys, "run", str(path))
    assert code == 2
    assert "function" in err


def test_run_resource_guard_exit_3(tmp_path, capsys):
    spec = harmonic_base(27, 9)
    config = {
        "function": spec.to_json(),
        "n": 27,
        "k": 9,
        "sigma": 1.0,
        "T_grid": [10],
        "policies": [{"kind": "etcg"}],
        "trials": 1,
        "base_seed": 5,
        "output_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code, _, err = run_cli(capsys, "run", str(path))
    assert code == 3
    assert "resource guard" in err

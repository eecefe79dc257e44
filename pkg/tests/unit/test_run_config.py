"""Unit tests for experiment configuration files."""

from pathlib import Path

import pytest

from croann.domain.exceptions import ConfigurationError
from croann.domain.models import PRESETS, get_preset
from croann.infrastructure.datasets.loader import parse_csv
from croann.infrastructure.run_config import (
    load_run_config,
    preset_config,
    read_key_values,
    render_config,
)

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"


def test_load_defaults(write_config, cluster_csv):
    """Test that unset keys take their documented defaults."""
    config = load_run_config(write_config(cluster_csv))

    assert config.data.counts == (20, 10, 10)
    assert config.cro.pop_size == 10
    assert config.cro.initial_ke == 100.0
    assert config.cro.decomp_threshold == 300
    assert config.net.hidden == 5
    assert config.op.gaussian_variance == 0.1
    assert config.stop.window_size == 50
    assert config.run.base_seed == 7


def test_network_config(write_config, cluster_csv):
    """Test that the network shape comes from the dataset."""
    net = load_run_config(write_config(cluster_csv, net__hidden="7")).network_config(4, 3)

    assert (net.n0, net.n1, net.n2) == (4, 7, 3)
    assert (net.alpha, net.beta) == (1.0, 0.7)


def test_environment_overrides_file(write_config, cluster_csv, monkeypatch):
    """Test that CROANN_<SECTION>__<KEY> wins over the file value."""
    monkeypatch.setenv("CROANN_CRO__POP_SIZE", "30")

    config = load_run_config(write_config(cluster_csv))

    assert config.cro.pop_size == 30
    assert config.cro.fe_limit == 400


def test_manifest_keys_ignored(write_config, cluster_csv, tmp_path):
    """Test that a replayed manifest loads as a config."""
    path = write_config(cluster_csv)
    with open(path, "a", encoding="utf-8") as f:
        f.write("manifest.version = 0.1.0\nmanifest.seeds = 7-8\n")

    assert load_run_config(path).run.n_trials == 2


def test_comments_and_blank_lines(tmp_path):
    """Test comment stripping."""
    path = tmp_path / "c.conf"
    path.write_text("# header\n\ncro.pop_size = 5  # inline\n", encoding="utf-8")

    assert read_key_values(path) == {"cro": {"pop_size": "5"}}


def test_duplicate_key(tmp_path):
    """Test that a repeated key is rejected."""
    path = tmp_path / "c.conf"
    path.write_text("cro.pop_size = 5\ncro.pop_size = 6\n", encoding="utf-8")

    with pytest.raises(ConfigurationError) as exc:
        read_key_values(path)
    assert exc.value.key == "cro.pop_size"


@pytest.mark.parametrize("line", ["pop_size = 5", "cro.pop_size 5"])
def test_malformed_line(tmp_path, line):
    """Test lines without a section or an equals sign."""
    path = tmp_path / "c.conf"
    path.write_text(line + "\n", encoding="utf-8")

    with pytest.raises(ConfigurationError, match="line 1"):
        read_key_values(path)


@pytest.mark.parametrize(
    "key, value",
    [
        ("cro.mole_coll", "1.5"),
        ("cro.pop_size", "0"),
        ("cro.synth_threshold", "-1"),
        ("data.split", "10,10"),
        ("cro.unknown", "1"),
    ],
)
def test_invalid_value_names_key(write_config, cluster_csv, key, value):
    """Test that validation errors carry the offending key."""
    path = write_config(cluster_csv, **{key.replace(".", "__"): value})

    with pytest.raises(ConfigurationError) as exc:
        load_run_config(path)
    assert exc.value.key == key


def test_missing_config_file(tmp_path):
    """Test an unreadable config file."""
    with pytest.raises(ConfigurationError, match="cannot read"):
        load_run_config(tmp_path / "absent.conf")


def test_with_value(write_config, cluster_csv):
    """Test copying with one key replaced."""
    config = load_run_config(write_config(cluster_csv))

    updated = config.with_value("cro.ke_loss_rate", "0.3")

    assert updated.cro.ke_loss_rate == 0.3
    assert config.cro.ke_loss_rate == 0.1
    assert updated.cro.pop_size == config.cro.pop_size
    with pytest.raises(ConfigurationError):
        config.with_value("cro.ke_loss_rate", "2")
    with pytest.raises(ConfigurationError):
        config.with_value("nope.key", "1")


def test_to_pairs_round_trip(write_config, cluster_csv, tmp_path):
    """Test that rendered pairs load back to the same configuration."""
    config = load_run_config(write_config(cluster_csv))
    path = tmp_path / "again.conf"
    path.write_text(render_config(config), encoding="utf-8")

    assert load_run_config(path) == config


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_shipped_configs_match_presets(name):
    """Test that configs/<preset>.conf is what config init would write."""
    preset = get_preset(name)
    expected = render_config(preset_config(preset, Path("data")), header=preset.description)

    assert (CONFIG_DIR / f"{name}.conf").read_text(encoding="utf-8") == expected


def test_unknown_preset():
    """Test the unknown preset message."""
    with pytest.raises(ConfigurationError, match="iris"):
        get_preset("wine")


def test_population_above_budget_rejected(write_config, cluster_csv):
    """Test that pop_size may not exceed fe_limit, from a file or a replaced value."""
    with pytest.raises(ConfigurationError, match="exceeds the evaluation limit"):
        load_run_config(write_config(cluster_csv, cro__pop_size="500"))

    config = load_run_config(write_config(cluster_csv))
    with pytest.raises(ConfigurationError) as exc:
        config.with_value("cro.pop_size", "500")
    assert exc.value.key == "cro.pop_size"


def test_delimiter_reaches_schema(write_config, cluster_csv, tmp_path):
    """Test that data.delimiter selects the loader's field separator."""
    semicolons = tmp_path / "clusters.ssv"
    semicolons.write_text(cluster_csv.read_text(encoding="utf-8").replace(",", ";"), encoding="utf-8")

    config = load_run_config(write_config(semicolons, data__delimiter=";"))

    assert config.data.schema().delimiter == ";"
    raw = parse_csv(semicolons, config.data.schema())
    assert raw.attributes.shape == (40, 2)
    assert raw.class_names == ["low", "high"]

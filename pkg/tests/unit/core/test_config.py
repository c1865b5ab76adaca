from pathlib import Path

import pytest

from hl_prover import get_available_modules, load_module
from hl_prover.core.base import ModuleStatus
from hl_prover.core.config import ConfigManager
from hl_prover.core.exceptions import ConfigurationError
from hl_prover.decide import Decider
from hl_prover.linarith import Linarith
from hl_prover.resolver import Resolver

SHIPPED = Path(__file__).resolve().parents[3] / "config" / "hl-prover.yaml"


class TestConfigManager:
    """Test configuration loading"""

    @pytest.fixture(autouse=True)
    def clean_env(self, monkeypatch):
        monkeypatch.delenv("HL_PROVER_CONFIG", raising=False)
        monkeypatch.delenv("HL_PROVER_LOG_LEVEL", raising=False)

    def test_defaults(self, tmp_path):
        """Test defaults apply without a file"""
        config = ConfigManager(tmp_path / "missing.yaml", load_env=False)

        assert config.get("resolver.max_depth") == 32
        assert config.get("simp.fuel") == 10000
        assert config.get("nothing.here", "fallback") == "fallback"

    def test_shipped_file_matches_defaults(self, tmp_path):
        """Test the example config file restates the defaults"""
        shipped = ConfigManager(SHIPPED, load_env=False)
        defaults = ConfigManager(tmp_path / "missing.yaml", load_env=False)

        for key in ("resolver", "simp", "ring", "linarith", "decide", "lint", "bench"):
            assert shipped.get(key) == defaults.get(key)

    def test_partial_override(self, tmp_path):
        """Test a file only replaces the keys it names"""
        path = tmp_path / "hl-prover.yaml"
        path.write_text("resolver:\n  strategy: bidir\n", encoding="utf-8")
        config = ConfigManager(path, load_env=False)

        assert config.get("resolver.strategy") == "bidir"
        assert config.get("resolver.max_depth") == 32

    def test_env_override(self, tmp_path, monkeypatch):
        """Test the log level variable and config path variable"""
        path = tmp_path / "custom.json"
        path.write_text('{"linarith": {"var_limit": 5}}', encoding="utf-8")
        monkeypatch.setenv("HL_PROVER_CONFIG", str(path))
        monkeypatch.setenv("HL_PROVER_LOG_LEVEL", "debug")
        config = ConfigManager(load_env=False)

        assert config.config_path == path
        assert config.get("linarith.var_limit") == 5
        assert config.get("general.log_level") == "DEBUG"

    def test_bad_files(self, tmp_path):
        """Test unsupported formats and non-mapping roots"""
        toml = tmp_path / "config.toml"
        toml.write_text("", encoding="utf-8")
        listing = tmp_path / "config.yaml"
        listing.write_text("- 1\n", encoding="utf-8")

        with pytest.raises(ConfigurationError):
            ConfigManager(toml, load_env=False)
        with pytest.raises(ConfigurationError):
            ConfigManager(listing, load_env=False)

    def test_save_round_trip(self, tmp_path):
        """Test saved settings load back"""
        path = tmp_path / "saved.yaml"
        config = ConfigManager(path, load_env=False)
        config.set("simp.fuel", 50)
        config.save()

        assert ConfigManager(path, load_env=False).get("simp.fuel") == 50


class TestModules:
    """Test the engine module registry"""

    def test_available(self):
        """Test every engine registers"""
        assert get_available_modules() == ["resolver", "simplifier", "ring", "linarith", "decide"]

    def test_load(self):
        """Test modules load by name with their own config"""
        module = load_module("linarith", {"var_limit": 3})

        assert module.config["var_limit"] == 3

    def test_unknown(self):
        """Test unknown names raise ImportError"""
        with pytest.raises(ImportError):
            load_module("browser")

    def test_load_from_config_manager(self, tmp_path):
        """Test modules read their own section of a ConfigManager"""
        path = tmp_path / "hl-prover.yaml"
        path.write_text("simp:\n  fuel: 25\n", encoding="utf-8")
        module = load_module("simplifier", ConfigManager(path, load_env=False))

        assert module.config["fuel"] == 25

    def test_decide_has_its_own_section(self, tmp_path):
        """Test the decider reads the decide section, not the ring one"""
        path = tmp_path / "hl-prover.yaml"
        path.write_text("ring:\n  exponent_limit: 7\ndecide:\n  exponent_limit: 99\n", encoding="utf-8")
        config = ConfigManager(path, load_env=False)

        assert load_module("decide", config).config["exponent_limit"] == 99
        assert load_module("ring", config).config["exponent_limit"] == 7


class TestEngineModule:
    """Test the engine module life cycle"""

    def test_info(self):
        """Test module info lists the configuration keys"""
        info = Resolver().get_info()

        assert info.name == "Resolver"
        assert "max_depth" in info.config_keys
        assert Linarith().get_info().uses == ["RingNormalizer"]

    def test_run_times_execution(self):
        """Test run returns the result with a duration and leaves the module ready"""
        decider = Decider()
        result = decider.run({"prop": "forall x < 3, x * x < 9"})

        assert result.success
        assert result.duration >= 0
        assert decider.status == ModuleStatus.READY

    def test_invalid_module_refuses_to_run(self):
        """Test a module with a bad configuration does not execute"""
        result = Decider({"exponent_limit": 0}).run({"prop": "1 < 2"})

        assert not result.success
        assert result.metadata["error_type"] == "ModuleError"

    def test_update_config_revalidates(self):
        """Test updates re-run validation and unknown keys are dropped"""
        resolver = Resolver()
        resolver.update_config({"strategy": "sideways", "colour": "red"})

        assert resolver.status == ModuleStatus.ERROR
        assert "colour" not in resolver.config
        resolver.update_config({"strategy": "bidir"})
        assert resolver.status == ModuleStatus.READY

"""TestSettings"""
import os
import unittest
from unittest.mock import patch

from numpy.random import default_rng

from tropls.common.constants import EngineDefaults
from tropls.common.settings import DependenceConfig, TLSConfig, load_config, make_rng, resolve_seed


class TestSettings(unittest.TestCase):
    """
    Testing the configuration helpers.
    """

    def setUp(self):
        """
        Setting up the environment
        """
        self.environment = patch.dict(os.environ, {}, clear=False)
        self.environment.start()
        os.environ.pop("TROPLS_SEED", None)

    def tearDown(self):
        self.environment.stop()

    def test_load_config_defaults(self):
        """
        Tests the load_config method when the packaged configuration is read
        """
        config = load_config()
        self.assertEqual(DependenceConfig(), DependenceConfig(**config["engine"]))
        self.assertEqual(TLSConfig(), TLSConfig(**config["tls"]))
        self.assertEqual({"l1": 5, "l2": 4, "l3": 3, "x": 3}, config["fixtures"]["loop-of-loops"])
        self.assertEqual(1, config["logging"]["version"])

    def test_resolve_seed_default(self):
        """
        Tests the resolve_seed method when TROPLS_SEED is not set
        """
        self.assertEqual(EngineDefaults.SEED.value, resolve_seed())
        self.assertEqual(11, resolve_seed(11))

    def test_resolve_seed_environment(self):
        """
        Tests the resolve_seed method when TROPLS_SEED overrides the default
        """
        with patch.dict(os.environ, {"TROPLS_SEED": "7"}):
            self.assertEqual(7, resolve_seed(11))

    def test_make_rng_is_reproducible(self):
        """
        Tests the make_rng method when an explicit seed and an environment seed are used
        """
        self.assertEqual(default_rng(5).integers(1000), make_rng(5).integers(1000))
        with patch.dict(os.environ, {"TROPLS_SEED": "3"}):
            self.assertEqual(default_rng(3).integers(1000), make_rng().integers(1000))


if __name__ == "__main__":
    unittest.main()

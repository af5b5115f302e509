# tests/test_utils.py

import json
import logging
import os
import unittest
from fractions import Fraction
from unittest.mock import patch

from qaffine.core.exceptions import ConfigurationError
from qaffine.utils.configuration import Configuration
from qaffine.utils.logging_config import setup_logging


class TestConfiguration(unittest.TestCase):

    def setUp(self):
        self.config_file = 'test_qaffine_config.json'
        if os.path.exists(self.config_file):
            os.remove(self.config_file)

    def tearDown(self):
        if os.path.exists(self.config_file):
            os.remove(self.config_file)
        Configuration.load()

    def test_defaults(self):
        Configuration.load()
        self.assertEqual(Configuration.get('cutoff'), 8)
        self.assertEqual(Configuration.get('format'), 'text')
        self.assertIsNone(Configuration.get('missing'))

    def test_file_and_environment(self):
        with open(self.config_file, 'w', encoding='utf-8') as f:
            json.dump({'cutoff': 5, 'seed': '3'}, f)
        with patch.dict(os.environ, {'QAFFINE_CUTOFF': '6'}):
            Configuration.load(self.config_file)
        # The environment wins over the file
        self.assertEqual(Configuration.get('cutoff'), 6)
        self.assertEqual(Configuration.get('seed'), 3)

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            Configuration.load('/nonexistent/qaffine.json')

    def test_invalid_values(self):
        with open(self.config_file, 'w', encoding='utf-8') as f:
            json.dump({'cutoff': 'many'}, f)
        with self.assertRaises(ConfigurationError):
            Configuration.load(self.config_file)
        with open(self.config_file, 'w', encoding='utf-8') as f:
            f.write('[1, 2]')
        with self.assertRaises(ConfigurationError):
            Configuration.load(self.config_file)

    def test_crossing_values(self):
        Configuration.load()
        Configuration.set('crossing_grid', [-1, 1])
        values = Configuration.crossing_values()
        self.assertEqual(values, [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)])
        with patch.dict(os.environ, {'QAFFINE_CROSSING_GRID': '0,2'}):
            Configuration.load()
        self.assertEqual(Configuration.get('crossing_grid'), [0, 2])


class TestLogging(unittest.TestCase):

    def tearDown(self):
        Configuration.load()
        setup_logging()

    def test_level_override(self):
        Configuration.load()
        setup_logging('debug')
        self.assertEqual(logging.getLogger().level, logging.DEBUG)
        setup_logging()
        self.assertEqual(logging.getLogger().level, logging.WARNING)

    def test_log_file(self):
        log_file = 'test_qaffine.log'
        Configuration.set('log_file', log_file)
        try:
            setup_logging('info')
            logging.getLogger('qaffine.tests').info("written to the log file")
            for handler in logging.getLogger().handlers:
                handler.flush()
            with open(log_file, encoding='utf-8') as f:
                self.assertIn("written to the log file", f.read())
        finally:
            Configuration.set('log_file', None)
            setup_logging()
            if os.path.exists(log_file):
                os.remove(log_file)


if __name__ == '__main__':
    unittest.main()

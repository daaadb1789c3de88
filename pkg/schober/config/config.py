import os

from dotenv import load_dotenv

basedir = os.path.abspath(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

load_dotenv(os.path.join(basedir, '.env'))


class Config:
    """Base configuration settings"""
    LOG_LEVEL = os.environ.get('SCHOBER_LOG_LEVEL') or 'WARNING'
    # Truncation window N for pullbacks along the Z-cover
    DEFAULT_WINDOW = int(os.environ.get('SCHOBER_DEFAULT_WINDOW') or 4)
    FUZZ_SEED = int(os.environ.get('SCHOBER_FUZZ_SEED') or 20240517)
    REPORT_DIR = os.environ.get('SCHOBER_REPORT_DIR') or os.path.join(basedir, 'reports')
    # Laurent exponents are signed 64-bit
    MAX_LAURENT_EXPONENT = 2 ** 63 - 1

    @staticmethod
    def init_app(settings):
        pass


class DevelopmentConfig(Config):
    """Development configuration settings"""
    LOG_LEVEL = os.environ.get('SCHOBER_LOG_LEVEL') or 'DEBUG'


class TestingConfig(Config):
    """Settings used by the pytest suites"""
    DEFAULT_WINDOW = 4
    FUZZ_SEED = 12345


class ProductionConfig(Config):
    """Batch verification settings"""
    LOG_LEVEL = os.environ.get('SCHOBER_LOG_LEVEL') or 'WARNING'


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': ProductionConfig
}

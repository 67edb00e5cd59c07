import os

from dotenv import load_dotenv


load_dotenv()


class Config:
    LOG_LEVEL = os.environ.get("ORDSEEK_LOG", "off")
    SETTINGS_FILE = os.environ.get("ORDSEEK_CONFIG")

    KARATSUBA_THRESHOLD = int(os.environ.get("ORDSEEK_KARATSUBA_THRESHOLD", 32))
    # Fixed scan-step crossover for dyadic ranges; unset lets the lattice cost estimate decide.
    SCAN_LIMIT = int(os.environ["ORDSEEK_SCAN_LIMIT"]) if os.environ.get("ORDSEEK_SCAN_LIMIT") else None
    ORACLE_CAP = int(os.environ.get("ORDSEEK_ORACLE_CAP", 10**7))
    THREADS = int(os.environ.get("ORDSEEK_THREADS", 1))
    WINDOW_FACTOR = int(os.environ.get("ORDSEEK_WINDOW_FACTOR", 10))
    LOG_PRECISION_BITS = 128


class TestConfig(Config):
    TESTING = True
    LOG_LEVEL = "off"
    SCAN_LIMIT = 0
    ORACLE_CAP = 10**6
    THREADS = 1

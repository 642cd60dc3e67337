from .config import Config

CONFIG = Config()

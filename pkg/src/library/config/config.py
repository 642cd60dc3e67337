import os  # pylint: disable=C0114,missing-module-docstring
import shutil
from pathlib import Path
from typing import Any, Union

import yaml

PATH_CONFIG_DEFAULT = Path(__file__).parent / "default.yaml"
CONFIG_FILE_NAME = "skt-forge-config.yaml"


class Config:
    def __init__(self, path_cfg: Union[Path, None] = None):
        self.path_cfg = path_cfg
        self.load_config(path_cfg)

    def load_config(self, path_cfg: Union[Path, None] = None):
        with open(PATH_CONFIG_DEFAULT, "r") as f:
            d_cfg = yaml.safe_load(f)
        if path_cfg is None:
            path_cwd = Path(os.getcwd())
            path_cfg = path_cwd / CONFIG_FILE_NAME
        cfg = d_cfg
        if path_cfg.exists():
            with open(path_cfg, "r") as f:
                u_cfg = yaml.safe_load(f) or {}
            # user sections override defaults key by key; validation lives in ConfigManager
            cfg = {k: {**v, **u_cfg.get(k, {})} for k, v in d_cfg.items()}
            self.path_cfg = path_cfg
        self.cfg = cfg

    def section(self, name: str) -> dict[str, Any]:
        return dict(self.cfg.get(name, {}))

    @classmethod
    def create_config_file(cls, path_cfg: Union[Path, None] = None) -> Path:
        if path_cfg is None:
            path_cwd = Path(os.getcwd())
            path_cfg = path_cwd / CONFIG_FILE_NAME
        shutil.copy(PATH_CONFIG_DEFAULT, path_cfg)
        return path_cfg

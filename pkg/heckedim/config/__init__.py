from .default import get_cfg_defaults

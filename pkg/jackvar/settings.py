from __future__ import annotations

from enum import Enum
from typing import Optional, Set


class Command(Enum):
    ESTIMATE = "estimate"
    RATE = "rate"
    NORMALITY = "normality"
    COMPARE_BOOT = "compare-boot"
    CONSISTENCY = "consistency"


class ValueKind(Enum):
    STRING = "string"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    GRID = "grid"
    PATH = "path"


class ConfigKey(Enum):
    FUNCTIONAL = "functional"
    INPUT = "input"
    MODEL = "model"
    N = "n"
    N_GRID = "n_grid"
    REPLICATES = "replicates"
    BOOTSTRAP_B = "bootstrap_b"
    BOOTSTRAP = "bootstrap"
    MASTER_SEED = "master_seed"
    SUMMARY = "summary"
    CONTRAST = "contrast"
    OUTPUT = "output"
    FORMAT = "format"
    LOGS_DIR = "logs_dir"
    PROMETHEUS_PORT = "prometheus_port"

    @staticmethod
    def default(key: ConfigKey) -> Optional[str]:
        if key == ConfigKey.REPLICATES:
            return "200"
        elif key == ConfigKey.BOOTSTRAP_B:
            return "500"
        elif key == ConfigKey.BOOTSTRAP:
            return "false"
        elif key == ConfigKey.MASTER_SEED:
            return "20011"
        elif key == ConfigKey.SUMMARY:
            return "median"
        elif key == ConfigKey.CONTRAST:
            return "jack_vs_ijack"
        elif key == ConfigKey.FORMAT:
            return "csv"
        elif key == ConfigKey.PROMETHEUS_PORT:
            return "0"
        return None

    @staticmethod
    def kind(key: ConfigKey) -> ValueKind:
        if key in [ConfigKey.N, ConfigKey.REPLICATES, ConfigKey.BOOTSTRAP_B, ConfigKey.MASTER_SEED,
                   ConfigKey.PROMETHEUS_PORT]:
            return ValueKind.INTEGER
        elif key == ConfigKey.BOOTSTRAP:
            return ValueKind.BOOLEAN
        elif key == ConfigKey.N_GRID:
            return ValueKind.GRID
        elif key in [ConfigKey.INPUT, ConfigKey.OUTPUT, ConfigKey.LOGS_DIR]:
            return ValueKind.PATH
        return ValueKind.STRING

    @staticmethod
    def choices(key: ConfigKey) -> Optional[Set[str]]:
        if key == ConfigKey.SUMMARY:
            return {"median", "mean", "q90"}
        elif key == ConfigKey.CONTRAST:
            return {"jack_vs_ijack", "jack_vs_boot"}
        elif key == ConfigKey.FORMAT:
            return {"csv", "record"}
        return None

    @staticmethod
    def commands(key: ConfigKey) -> Set[Command]:
        """Commands that accept the key"""
        every = set(Command)
        studies = {Command.RATE, Command.NORMALITY, Command.COMPARE_BOOT, Command.CONSISTENCY}
        if key == ConfigKey.INPUT:
            return {Command.ESTIMATE}
        elif key == ConfigKey.MODEL:
            return every
        elif key == ConfigKey.N:
            return {Command.ESTIMATE, Command.NORMALITY, Command.CONSISTENCY}
        elif key in [ConfigKey.N_GRID, ConfigKey.SUMMARY]:
            return {Command.RATE, Command.COMPARE_BOOT}
        elif key == ConfigKey.CONTRAST:
            return {Command.RATE}
        elif key == ConfigKey.REPLICATES:
            return studies
        elif key == ConfigKey.BOOTSTRAP:
            return {Command.ESTIMATE, Command.CONSISTENCY}
        elif key == ConfigKey.BOOTSTRAP_B:
            return {Command.ESTIMATE, Command.RATE, Command.COMPARE_BOOT, Command.CONSISTENCY}
        return every

    @staticmethod
    def required(key: ConfigKey, command: Command) -> bool:
        if key == ConfigKey.FUNCTIONAL:
            return True
        elif key == ConfigKey.MODEL:
            return command != Command.ESTIMATE
        elif key == ConfigKey.N_GRID:
            return command in [Command.RATE, Command.COMPARE_BOOT]
        elif key == ConfigKey.N:
            return command in [Command.NORMALITY, Command.CONSISTENCY]
        return False

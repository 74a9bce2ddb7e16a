import argparse
import configparser
import logging
import os
import sys
from dataclasses import dataclass
from sys import exit
from typing import Dict, List, Optional

from jackvar import __version__
from jackvar.errors import JackvarError, ConfigError, UnknownKey, MissingRequired, TypeMismatch
from jackvar.metrics import start_metrics_endpoint
from jackvar.registry import resolve_functional, resolve_model
from jackvar.report_writer import ReportWriter, OutputFormat
from jackvar.settings import Command, ConfigKey, ValueKind
from jackvar.simulation.experiments import run_rate_study, run_compare_boot, normality_study, consistency_study, \
    BOOTSTRAP_STREAM, SAMPLE_STREAM
from jackvar.simulation.models import RateStudyConfig, Summary, Contrast
from jackvar.simulation.sampling import draw, derive_seed
from jackvar.statistics.empirical import load_samples
from jackvar.statistics.estimators import estimate_all
from jackvar.utils import parse_grid, format_grid

LOGGING_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclass
class RunConfig:
    command: Command
    functional: str
    model: Optional[str] = None
    input_file: Optional[str] = None
    n: Optional[int] = None
    n_grid: Optional[List[int]] = None
    replicates: int = 200
    bootstrap_b: int = 500
    bootstrap: bool = False
    master_seed: int = 20011
    summary: Summary = Summary.MEDIAN
    contrast: Contrast = Contrast.JACK_VS_IJACK
    output_path: Optional[str] = None
    output_format: OutputFormat = OutputFormat.CSV
    logs_dir: Optional[str] = None
    prometheus_port: int = 0

    def echo(self) -> str:
        """Resolved configuration including defaults, as one line of key=value pairs"""
        items = [("command", self.command.value), ("functional", self.functional), ("model", self.model),
                 ("input", self.input_file), ("n", self.n),
                 ("n_grid", format_grid(self.n_grid) if self.n_grid else None)]
        if self.command != Command.ESTIMATE:
            items.append(("replicates", self.replicates))
        if self.command in [Command.RATE, Command.COMPARE_BOOT]:
            items += [("summary", self.summary.value)]
        if self.command == Command.RATE:
            items += [("contrast", self.contrast.value)]
        if self.uses_bootstrap():
            items.append(("bootstrap_b", self.bootstrap_b))
        items += [("master_seed", self.master_seed), ("format", self.output_format.value)]
        return "; ".join(f"{key}={value}" for key, value in items if value is not None)

    def uses_bootstrap(self) -> bool:
        if self.command == Command.COMPARE_BOOT:
            return True
        if self.command == Command.RATE:
            return self.contrast == Contrast.JACK_VS_BOOT
        return self.bootstrap


def _convert(key: ConfigKey, value: str):
    value = value.strip()
    kind = ConfigKey.kind(key)
    if kind == ValueKind.INTEGER:
        try:
            return int(value)
        except ValueError:
            raise TypeMismatch(key.value, value, "integer")
    if kind == ValueKind.BOOLEAN:
        if value.lower() not in configparser.ConfigParser.BOOLEAN_STATES:
            raise TypeMismatch(key.value, value, "boolean")
        return configparser.ConfigParser.BOOLEAN_STATES[value.lower()]
    if kind == ValueKind.GRID:
        try:
            grid = parse_grid(value)
        except ValueError:
            raise TypeMismatch(key.value, value, "grid like 64..4096 or 64,128,256")
        if not grid:
            raise TypeMismatch(key.value, value, "nonempty grid")
        return grid

    choices = ConfigKey.choices(key)
    if choices is not None and value.lower() not in choices:
        raise TypeMismatch(key.value, value, f"one of {', '.join(sorted(choices))}")
    if not value:
        raise TypeMismatch(key.value, value, "nonempty value")
    return value.lower() if choices is not None else value


def build_config(command: Command, entries: Dict[str, str]) -> RunConfig:
    values = {}
    for name, raw in entries.items():
        name = name.strip().lower()
        try:
            key = ConfigKey(name)
        except ValueError:
            raise UnknownKey(name)
        if command not in ConfigKey.commands(key):
            raise ConfigError(f"Config key {name} is not accepted by {command.value}", name)
        values[key] = _convert(key, raw)

    for key in ConfigKey:
        if key not in values:
            if ConfigKey.required(key, command):
                raise MissingRequired(key.value)
            default = ConfigKey.default(key)
            if default is not None:
                values[key] = _convert(key, default)

    if command == Command.ESTIMATE:
        if ConfigKey.INPUT in values and ConfigKey.MODEL in values:
            raise ConfigError("estimate takes either input or model, not both", ConfigKey.MODEL.value)
        if ConfigKey.INPUT not in values and ConfigKey.MODEL not in values:
            raise MissingRequired(ConfigKey.INPUT.value)
        if ConfigKey.MODEL in values and ConfigKey.N not in values:
            raise MissingRequired(ConfigKey.N.value)

    # Resolve once so unknown names fail before any work starts
    resolve_functional(values[ConfigKey.FUNCTIONAL])
    if ConfigKey.MODEL in values:
        resolve_model(values[ConfigKey.MODEL])

    return RunConfig(
        command=command,
        functional=values[ConfigKey.FUNCTIONAL],
        model=values.get(ConfigKey.MODEL),
        input_file=values.get(ConfigKey.INPUT),
        n=values.get(ConfigKey.N),
        n_grid=values.get(ConfigKey.N_GRID),
        replicates=values[ConfigKey.REPLICATES],
        bootstrap_b=values[ConfigKey.BOOTSTRAP_B],
        bootstrap=values[ConfigKey.BOOTSTRAP],
        master_seed=values[ConfigKey.MASTER_SEED],
        summary=Summary(values[ConfigKey.SUMMARY]),
        contrast=Contrast(values[ConfigKey.CONTRAST]),
        output_path=values.get(ConfigKey.OUTPUT),
        output_format=OutputFormat(values[ConfigKey.FORMAT]),
        logs_dir=values.get(ConfigKey.LOGS_DIR),
        prometheus_port=values[ConfigKey.PROMETHEUS_PORT],
    )


def parse_config(text: str, command: Optional[Command] = None,
                 overrides: Optional[Dict[str, str]] = None) -> RunConfig:
    """
    Parse a config with exactly one ``[command]`` section of flat ``key = value`` lines.
    Overrides (from the command line) replace values of the file.
    :raises UnknownKey, MissingRequired, TypeMismatch: naming the offending key
    """
    cfg = configparser.ConfigParser(interpolation=None)
    try:
        cfg.read_string(text)
    except configparser.Error as e:
        raise ConfigError(f"Malformed config: {e}")

    sections = cfg.sections()
    if len(sections) != 1:
        raise ConfigError(f"Config needs exactly one [command] section, got {len(sections)}")
    try:
        section_command = Command(sections[0].strip().lower())
    except ValueError:
        raise ConfigError(f"Unknown command section [{sections[0]}]")
    if command is not None and section_command != command:
        raise ConfigError(f"Config section [{section_command.value}] does not match command {command.value}")

    entries = dict(cfg.items(sections[0]))
    entries.update(overrides or {})
    return build_config(section_command, entries)


def read_config(path: str, command: Optional[Command] = None,
                overrides: Optional[Dict[str, str]] = None) -> RunConfig:
    with open(path, "r", encoding="utf-8") as f:
        return parse_config(f.read(), command, overrides)


def provenance(cfg: RunConfig) -> List[str]:
    return [f"jackvar {__version__}", f"config: {cfg.echo()}"]


def run(cfg: RunConfig) -> int:
    writer = ReportWriter(provenance(cfg), cfg.output_path, cfg.output_format)
    spec = resolve_functional(cfg.functional)
    model = resolve_model(cfg.model) if cfg.model else None

    if cfg.command == Command.ESTIMATE:
        if cfg.input_file:
            sample = load_samples(cfg.input_file)
        else:
            sample = draw(model, cfg.n, derive_seed(cfg.master_seed, cfg.n, 0, SAMPLE_STREAM))
        b, seed = None, None
        if cfg.bootstrap:
            b, seed = cfg.bootstrap_b, derive_seed(cfg.master_seed, sample.n, 0, BOOTSTRAP_STREAM)
        estimates = estimate_all(spec, sample, b, seed)
        logging.info(f"{spec.name}: T_n={estimates.statistic}, v_jack={estimates.jackknife.value}, "
                     f"v_ijack={estimates.infinitesimal_jackknife.value}")
        writer.write_estimates(estimates)

    elif cfg.command in [Command.RATE, Command.COMPARE_BOOT]:
        study = RateStudyConfig(spec, model, tuple(cfg.n_grid), cfg.replicates, cfg.master_seed, cfg.summary,
                                cfg.contrast, cfg.bootstrap_b)
        if cfg.command == Command.RATE:
            writer.write_rate([run_rate_study(study)])
        else:
            writer.write_rate(list(run_compare_boot(study)))

    elif cfg.command == Command.NORMALITY:
        writer.write_normality(normality_study(spec, model, cfg.n, cfg.replicates, cfg.master_seed))

    elif cfg.command == Command.CONSISTENCY:
        b = cfg.bootstrap_b if cfg.bootstrap else None
        writer.write_consistency(consistency_study(spec, model, cfg.n, cfg.replicates, cfg.master_seed, b))
    return 0


def setup_logging(command: Command, verbose: int, logs_dir: Optional[str]) -> None:
    if not verbose:
        logging_level = logging.WARNING
    elif verbose > 1:
        logging_level = logging.DEBUG
    else:
        logging_level = logging.INFO

    if logs_dir:
        os.makedirs(logs_dir, exist_ok=True)
        logging.basicConfig(format=LOGGING_FORMAT, level=logging_level,
                            filename=os.path.join(logs_dir, f"jackvar-{command.value}.log"))

        # Log also to stderr
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(logging.Formatter(LOGGING_FORMAT))
        logging.getLogger().addHandler(stream_handler)
    else:
        logging.basicConfig(format=LOGGING_FORMAT, level=logging_level)


def parse_overrides(pairs: Optional[List[str]]) -> Dict[str, str]:
    overrides = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"Expected key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        overrides[key.strip().lower()] = value.strip()
    return overrides


def main(argv: Optional[List[str]] = None):
    parser = argparse.ArgumentParser(prog="jackvar", description="Jackknife, infinitesimal jackknife and "
                                                                 "bootstrap variance estimation")
    parser.add_argument('command', choices=[c.value for c in Command], help='Task to run')
    parser.add_argument('--verbose', '-v', action='count', default=0)
    parser.add_argument('--config', '-c', action='store', metavar='CONFIG_FILE',
                        help='Config file with one [command] section')
    parser.add_argument('--seed', action='store', type=int, help='Overrides master_seed')
    parser.add_argument('--out', action='store', metavar='PATH', help='Overrides output')
    parser.add_argument('--set', action='append', metavar='KEY=VALUE', dest='settings',
                        help='Set a config key, may be repeated')
    args = parser.parse_args(argv)
    command = Command(args.command)

    try:
        overrides = parse_overrides(args.settings)
        if args.seed is not None:
            overrides[ConfigKey.MASTER_SEED.value] = str(args.seed)
        if args.out is not None:
            overrides[ConfigKey.OUTPUT.value] = args.out

        if args.config:
            cfg = read_config(args.config, command, overrides)
        else:
            cfg = build_config(command, overrides)
    except (JackvarError, OSError) as e:
        print(f"jackvar: invalid configuration: {e}", file=sys.stderr)
        exit(1)

    setup_logging(command, args.verbose, cfg.logs_dir)
    start_metrics_endpoint(cfg.prometheus_port, command.value)
    logging.info(f"### Start {command.value}: {cfg.echo()} ###")

    try:
        status = run(cfg)
    except (JackvarError, OSError) as e:
        logging.exception(f"{command.value} failed: {e}", exc_info=e)
        print(f"jackvar {command.value}: {e.__class__.__name__}: {e}", file=sys.stderr)
        exit(1)
    exit(status)


if __name__ == "__main__":
    main()

"""
Configuration models for hypergraph packing runs
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..exceptions import ConfigurationError
from .partitions import Regime, SchemeMode, derive_mode


@dataclass
class GenerateSource:
    """Random hypergraph H(n, p, k) to generate instead of reading a file"""
    n: int
    k: int
    p: float
    seed: int = 0

    def __post_init__(self):
        """Validate configuration after initialization"""
        if self.k < 2:
            raise ConfigurationError("Uniformity k must be at least 2")
        if self.k > self.n:
            raise ConfigurationError("Uniformity k must not exceed n")
        if not (0.0 <= self.p <= 1.0):
            raise ConfigurationError("Probability p must be between 0 and 1")
        if self.seed < 0:
            raise ConfigurationError("Seed must be non-negative")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> 'GenerateSource':
        """Parse the 'n,k,p' shorthand"""
        try:
            n, k, p = text.split(',')
            return cls(n=int(n), k=int(k), p=float(p), seed=seed)
        except ValueError:
            raise ConfigurationError(f"Expected 'n,k,p', got '{text}'")


@dataclass
class AuditConfig:
    """Audit toggle and sample budgets"""
    enabled: bool = False
    mode: str = "exact"
    samples: int = 1000
    eps: float = 0.2
    regularity_budget: int = 1000
    regularity_partitions: int = 10

    def __post_init__(self):
        """Validate configuration after initialization"""
        if self.mode not in ("exact", "sampled"):
            raise ConfigurationError("Audit mode must be 'exact' or 'sampled'")
        if self.samples <= 0:
            raise ConfigurationError("Audit samples must be positive")
        if not (0.0 < self.eps < 1.0):
            raise ConfigurationError("Audit eps must be between 0 and 1")
        if self.regularity_budget <= 0 or self.regularity_partitions <= 0:
            raise ConfigurationError("Regularity budgets must be positive")

    @classmethod
    def parse(cls, text: str) -> 'AuditConfig':
        """Parse 'exact' or 'sampled:COUNT'"""
        if text == "exact":
            return cls(enabled=True, mode="exact")
        if text.startswith("sampled:"):
            try:
                return cls(enabled=True, mode="sampled", samples=int(text.split(':', 1)[1]))
            except ValueError:
                pass
        raise ConfigurationError(f"Audit must be 'exact' or 'sampled:COUNT', got '{text}'")


@dataclass
class HamiltonConfig:
    """Budgets of the rotation-extension heuristic"""
    restart_budget: int = 50
    rotation_factor: int = 10
    stop_after_failures: int = 3

    def __post_init__(self):
        """Validate configuration after initialization"""
        if self.restart_budget <= 0:
            raise ConfigurationError("Restart budget must be positive")
        if self.rotation_factor <= 0:
            raise ConfigurationError("Rotation factor must be positive")
        if self.stop_after_failures <= 0:
            raise ConfigurationError("Failure limit must be positive")


@dataclass
class RunConfig:
    """Main packing run configuration"""
    ell: int
    input_path: Optional[str] = None
    generate: Optional[GenerateSource] = None
    mode: Optional[SchemeMode] = None
    regime: Regime = Regime.RANDOM
    r: Optional[int] = None
    f0: Optional[float] = None
    eps: Optional[float] = None
    seed: int = 0
    max_instances: int = 1000
    workers: int = 1
    cycles_out: Optional[str] = None
    report_out: Optional[str] = None
    metrics_out: Optional[str] = None
    include_timings: bool = True
    audit: AuditConfig = field(default_factory=AuditConfig)
    hamilton: HamiltonConfig = field(default_factory=HamiltonConfig)

    def __post_init__(self):
        """Validate configuration after initialization"""
        if (self.input_path is None) == (self.generate is None):
            raise ConfigurationError("Exactly one of input path or generate source is required")
        if self.ell < 1:
            raise ConfigurationError("Step size ell must be positive")
        if self.r is not None and self.r < 0:
            raise ConfigurationError("Instance count r must be non-negative")
        if self.f0 is not None and self.f0 <= 0:
            raise ConfigurationError("f0 must be positive")
        if self.eps is not None and self.eps <= 0:
            raise ConfigurationError("eps must be positive")
        if self.seed < 0:
            raise ConfigurationError("Seed must be non-negative")
        if self.max_instances <= 0:
            raise ConfigurationError("Instance cap must be positive")
        if self.workers <= 0:
            raise ConfigurationError("Worker count must be positive")
        if self.generate is not None:
            self.validate_shape(self.generate.n, self.generate.k)

    def validate_shape(self, n: int, k: int) -> None:
        """Check ell against a known (n, k); unsupported pairs raise UnsupportedCaseError"""
        if n % self.ell:
            raise ConfigurationError(f"ell={self.ell} does not divide n={n}")
        derive_mode(k, self.ell)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'RunConfig':
        """Create RunConfig from dictionary"""
        try:
            generate = config_dict.get('generate')
            if generate is not None:
                if not isinstance(generate, dict):
                    raise ConfigurationError("Generate source must be a dictionary")
                generate = GenerateSource(**generate)

            audit_data = config_dict.get('audit', {})
            if not isinstance(audit_data, dict):
                raise ConfigurationError("Audit must be a dictionary")
            hamilton_data = config_dict.get('hamilton', {})
            if not isinstance(hamilton_data, dict):
                raise ConfigurationError("Hamilton settings must be a dictionary")

            mode = config_dict.get('mode')
            return cls(
                ell=config_dict['ell'],
                input_path=config_dict.get('input'),
                generate=generate,
                mode=SchemeMode(mode) if mode else None,
                regime=Regime(config_dict.get('regime', Regime.RANDOM.value)),
                r=config_dict.get('r'),
                f0=config_dict.get('f0'),
                eps=config_dict.get('eps'),
                seed=config_dict.get('seed', 0),
                max_instances=config_dict.get('max_instances', 1000),
                workers=config_dict.get('workers', 1),
                cycles_out=config_dict.get('cycles_out'),
                report_out=config_dict.get('report_out'),
                metrics_out=config_dict.get('metrics_out'),
                include_timings=config_dict.get('include_timings', True),
                audit=AuditConfig(**audit_data),
                hamilton=HamiltonConfig(**hamilton_data),
            )
        except KeyError as e:
            raise ConfigurationError(f"Missing required configuration key: {e}")
        except TypeError as e:
            raise ConfigurationError(f"Invalid configuration format: {e}")
        except ValueError as e:
            raise ConfigurationError(f"Invalid configuration value: {e}")

"""Key-directed bit-shuffle cipher with attack oracles and a deterministic
sensor-network telemetry simulator."""

from .cipher import (
    MAX_KEY_BYTES,
    EmptyKeyError,
    KeyLengthError,
    NonByteAlignedError,
    adjacent_swap,
    bits_to_bytes,
    bytes_to_bits,
    complement,
    decrypt,
    encrypt,
    key_directed_xor,
)
from .keyspace import (
    AttackModel,
    BruteForceEstimate,
    KeyLengthOutOfRangeError,
    LengthMismatchError,
    estimate_brute_force,
    exhaustive_search,
    recover_keystream,
)
from .sim import (
    FrameCorruption,
    InvalidConfigError,
    SimConfig,
    SimReport,
    config_from_dict,
    fusion_receive,
    load_config,
    report_to_dict,
    run_simulation,
)
from .topology import NodeSpec, Topology, validate_topology
from .wire import (
    Frame,
    ReadingKind,
    SensorReading,
    decode_frame,
    decode_readings,
    encode_frame,
    encode_readings,
)

__version__ = "0.1.0"

__all__ = [
    "AttackModel",
    "BruteForceEstimate",
    "EmptyKeyError",
    "Frame",
    "FrameCorruption",
    "InvalidConfigError",
    "KeyLengthError",
    "KeyLengthOutOfRangeError",
    "LengthMismatchError",
    "MAX_KEY_BYTES",
    "NodeSpec",
    "NonByteAlignedError",
    "ReadingKind",
    "SensorReading",
    "SimConfig",
    "SimReport",
    "Topology",
    "adjacent_swap",
    "bits_to_bytes",
    "bytes_to_bits",
    "complement",
    "config_from_dict",
    "decode_frame",
    "decode_readings",
    "decrypt",
    "encode_frame",
    "encode_readings",
    "encrypt",
    "estimate_brute_force",
    "exhaustive_search",
    "fusion_receive",
    "key_directed_xor",
    "load_config",
    "recover_keystream",
    "report_to_dict",
    "run_simulation",
    "validate_topology",
]

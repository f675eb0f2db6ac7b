"""Deterministic discrete-event simulation of the telemetry pipeline.

Sensors fire on fixed periods and hand readings to their hub; each hub
flushes an aggregated batch every tick it received anything; the batch is
relayed hop by hop to the hub's sink; the sink encrypts it, wraps it in a
frame, and relays the frame to the fusion center, which looks up the key
for the sending sink, decrypts, re-parses the readings, and tallies the
result.  Intermediate nodes forward bytes untouched and never decrypt.

The whole run is a pure function of SimConfig: sensor values come from the
seeded mixer in `wsncrypt.rng`, ticks advance in lockstep, and same-tick
events are processed in sorted node order, so two runs of one config are
bit-identical.  The only way to lose data is the explicit corruption hook
(flip one bit of one frame), which exists to exercise the rejection
accounting at the fusion center.

Configs load from JSON; see `config_from_dict` for the exact field names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from . import rng
from .cipher import MAX_KEY_BYTES, decrypt, encrypt
from .topology import (
    ROLE_HUB,
    ROLE_SENSOR,
    ROLE_SINK,
    NodeSpec,
    Topology,
    validate_topology,
)
from .wire import (
    DecodeError,
    Frame,
    ReadingKind,
    SensorReading,
    WireError,
    decode_frame,
    decode_readings,
    encode_frame,
    encode_readings,
)

VALUE_LENGTHS = {
    ReadingKind.SCALAR: 2,
    ReadingKind.AUDIO: 16,
    ReadingKind.VIDEO: 32,
}


class NotASensorError(ValueError):
    """sense() was pointed at a node that is not a sensor."""


class ForeignReadingError(ValueError):
    """A hub was asked to aggregate a reading from a non-adjacent sensor."""


class BrokenRouteError(ValueError):
    """A relay path references missing nodes or edges."""


class UnknownSinkError(ValueError):
    """Fusion center has no key registered for the frame's sink."""

    kind = "unknown_sink"


class DecodeAfterDecryptError(ValueError):
    """Payload decrypted but did not parse as a reading batch (wrong key or
    corrupted-but-checksum-colliding payload)."""

    kind = "decode_after_decrypt"


class InvalidConfigError(ValueError):
    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class FrameCorruption:
    """Flip bit `bit_index` (MSB-first across the byte stream) of the
    `frame_index`-th frame transmitted, counting every sink's frames in one
    global sequence."""

    frame_index: int
    bit_index: int


@dataclass(frozen=True)
class SimConfig:
    topology: Topology
    sink_keys: Dict[int, bytes]
    registry: Dict[int, bytes]
    seed: int
    duration_ticks: int
    sense_period_ticks: int
    hop_latency_ticks: int
    corruption: Tuple[FrameCorruption, ...] = ()


@dataclass
class SinkStats:
    frames_sent: int = 0
    frames_delivered: int = 0
    frames_rejected: int = 0
    readings_recovered: int = 0


@dataclass
class SimReport:
    readings_sensed: int
    frames_sent: int
    frames_delivered: int
    frames_rejected: Dict[str, int]
    readings_recovered: int
    fidelity_ok: bool
    per_sink: Dict[int, SinkStats] = field(default_factory=dict)


def sense(topology: Topology, node_id: int, tick: int, seed: int) -> SensorReading:
    """Deterministic reading for (seed, node, tick).

    Value bytes come from the documented multiply-xor-shift mixer; length
    is fixed per kind (scalar 2, audio 16, video 32).
    """
    node = topology.node_map().get(node_id)
    if node is None or node.role != ROLE_SENSOR:
        raise NotASensorError(f"node {node_id} is not a sensor")
    stream_seed = rng.mix64(seed) ^ rng.mix64((node_id << 32) | (tick & 0xFFFFFFFF))
    value = rng.derive_bytes(stream_seed, VALUE_LENGTHS[node.kind])
    return SensorReading(node_id=node_id, timestamp=tick, kind=node.kind, value=value)


def aggregate(
    topology: Topology, hub_id: int, readings: Sequence[SensorReading]
) -> bytes:
    """Serialize a hub's batch, ordered by (node_id, timestamp)."""
    node = topology.node_map().get(hub_id)
    if node is None or node.role != ROLE_HUB:
        raise ValueError(f"node {hub_id} is not a hub")
    neighbors = topology.neighbors(hub_id)
    for reading in readings:
        if reading.node_id not in neighbors:
            raise ForeignReadingError(
                f"reading from node {reading.node_id} which is not adjacent"
                f" to hub {hub_id}"
            )
    ordered = sorted(readings, key=lambda r: (r.node_id, r.timestamp))
    return encode_readings(ordered)


def sink_transmit(sink_id: int, payload: bytes, sequence: int, key: bytes) -> Frame:
    """Encrypt a batch payload and wrap it in a cleartext-header frame."""
    return Frame(sink_id=sink_id, sequence=sequence, payload=encrypt(payload, key))


def relay(
    payload: bytes,
    path: Sequence[int],
    hop_latency_ticks: int,
    topology: Topology,
) -> List[Tuple[int, int]]:
    """Forwarding schedule along a route: (node, ticks-after-departure) per
    hop, last entry being the destination.  Bytes are never altered."""
    if hop_latency_ticks < 1:
        raise ValueError("hop_latency_ticks must be >= 1")
    if len(path) < 2:
        raise BrokenRouteError(f"path {list(path)} has no hops")
    nodes = topology.node_map()
    for node_id in path:
        if node_id not in nodes:
            raise BrokenRouteError(f"path visits removed node {node_id}")
    for a, b in zip(path, path[1:]):
        if not topology.has_edge(a, b):
            raise BrokenRouteError(f"no edge between {a} and {b}")
    return [
        (node_id, hop * hop_latency_ticks)
        for hop, node_id in enumerate(path[1:], start=1)
    ]


def fusion_receive(
    frame_bytes: bytes, registry: Mapping[int, bytes]
) -> List[SensorReading]:
    """Decode, key-select, decrypt, and re-parse one received frame.

    Raises the wire DecodeError subclasses, UnknownSinkError, or
    DecodeAfterDecryptError; callers count those as rejections.
    """
    frame = decode_frame(frame_bytes)
    key = registry.get(frame.sink_id)
    if key is None:
        raise UnknownSinkError(f"no key registered for sink {frame.sink_id}")
    plaintext = decrypt(frame.payload, key)
    try:
        return decode_readings(plaintext)
    except WireError as exc:
        raise DecodeAfterDecryptError(
            f"payload from sink {frame.sink_id} decrypted but failed to"
            f" parse: {exc}"
        ) from exc


def _validate_config(config: SimConfig) -> List[str]:
    problems = validate_topology(config.topology)
    if config.duration_ticks < 1:
        problems.append("duration_ticks must be >= 1")
    if config.duration_ticks > 0xFFFFFFFF:
        problems.append("duration_ticks must fit u32 timestamps")
    if config.sense_period_ticks < 1:
        problems.append("sense_period_ticks must be >= 1")
    if config.hop_latency_ticks < 1:
        problems.append("hop_latency_ticks must be >= 1")
    if not 0 <= config.seed < (1 << 64):
        problems.append("seed must fit u64")
    for sink_id in config.topology.ids_with_role(ROLE_SINK):
        if sink_id not in config.sink_keys:
            problems.append(f"sink {sink_id} has no key")
    for owner, key in list(config.sink_keys.items()) + list(
        config.registry.items()
    ):
        if not 1 <= len(key) <= MAX_KEY_BYTES:
            problems.append(
                f"key for sink {owner} must be 1..{MAX_KEY_BYTES} bytes"
            )
    for hook in config.corruption:
        if hook.frame_index < 0 or hook.bit_index < 0:
            problems.append("corruption indices must be non-negative")
    return problems


def _sense_period(config: SimConfig, node: NodeSpec) -> int:
    if node.sense_period_ticks is not None:
        return node.sense_period_ticks
    return config.sense_period_ticks


def _flip_bit(data: bytes, bit_index: int) -> bytes:
    out = bytearray(data)
    out[bit_index // 8] ^= 1 << (7 - bit_index % 8)
    return bytes(out)


def run_simulation(config: SimConfig) -> SimReport:
    """Run the full pipeline to quiescence and account for every frame.

    Sensing stops after `duration_ticks`; in-flight batches and frames are
    drained afterwards so nothing is cut off mid-route.  `fidelity_ok` is
    true iff the multiset of readings recovered at the fusion center equals
    the multiset of readings carried by delivered frames.
    """
    problems = _validate_config(config)
    if problems:
        raise InvalidConfigError(problems)

    topology = config.topology
    nodes = topology.node_map()
    sensors = sorted(topology.ids_with_role(ROLE_SENSOR))
    hub_of = {
        s: next(iter(topology.neighbors(s) & set(topology.ids_with_role(ROLE_HUB))))
        for s in sensors
    }
    corruption: Dict[int, List[int]] = {}
    for hook in config.corruption:
        corruption.setdefault(hook.frame_index, []).append(hook.bit_index)

    hub_inbox: Dict[int, List[SensorReading]] = {}
    # arrival tick -> list of in-flight items, kept in dispatch order
    to_sink: Dict[int, List[Tuple[int, bytes, Tuple[SensorReading, ...]]]] = {}
    to_fusion: Dict[int, List[Tuple[int, bytes, Tuple[SensorReading, ...]]]] = {}

    sequences: Dict[int, int] = {}
    frame_ordinal = 0

    report = SimReport(
        readings_sensed=0,
        frames_sent=0,
        frames_delivered=0,
        frames_rejected={},
        readings_recovered=0,
        fidelity_ok=False,
        per_sink={
            sink: SinkStats() for sink in sorted(topology.ids_with_role(ROLE_SINK))
        },
    )
    recovered: List[SensorReading] = []
    expected: List[SensorReading] = []

    tick = 1
    while tick <= config.duration_ticks or to_sink or to_fusion:
        if tick <= config.duration_ticks:
            for sensor_id in sensors:
                if tick % _sense_period(config, nodes[sensor_id]) == 0:
                    reading = sense(topology, sensor_id, tick, config.seed)
                    hub_inbox.setdefault(hub_of[sensor_id], []).append(reading)
                    report.readings_sensed += 1

        for hub_id in sorted(hub_inbox):
            batch = hub_inbox[hub_id]
            payload = aggregate(topology, hub_id, batch)
            route = topology.routes[hub_id]
            schedule = relay(payload, route, config.hop_latency_ticks, topology)
            arrival = tick + schedule[-1][1]
            carried = tuple(sorted(batch, key=lambda r: (r.node_id, r.timestamp)))
            to_sink.setdefault(arrival, []).append((route[-1], payload, carried))
        hub_inbox.clear()

        for sink_id, payload, carried in sorted(
            to_sink.pop(tick, []), key=lambda item: item[0]
        ):
            sequence = sequences.get(sink_id, 0)
            sequences[sink_id] = sequence + 1
            frame = sink_transmit(
                sink_id, payload, sequence, config.sink_keys[sink_id]
            )
            encoded = encode_frame(frame)
            for bit in corruption.get(frame_ordinal, ()):
                if bit < 8 * len(encoded):
                    encoded = _flip_bit(encoded, bit)
            frame_ordinal += 1
            report.frames_sent += 1
            report.per_sink[sink_id].frames_sent += 1
            route = topology.routes[sink_id]
            schedule = relay(encoded, route, config.hop_latency_ticks, topology)
            to_fusion.setdefault(tick + schedule[-1][1], []).append(
                (sink_id, encoded, carried)
            )

        for origin_sink, encoded, carried in sorted(
            to_fusion.pop(tick, []), key=lambda item: item[0]
        ):
            report.frames_delivered += 1
            report.per_sink[origin_sink].frames_delivered += 1
            expected.extend(carried)
            try:
                readings = fusion_receive(encoded, config.registry)
            except (DecodeError, UnknownSinkError, DecodeAfterDecryptError) as exc:
                kind = exc.kind
                report.frames_rejected[kind] = (
                    report.frames_rejected.get(kind, 0) + 1
                )
                report.per_sink[origin_sink].frames_rejected += 1
            else:
                recovered.extend(readings)
                report.readings_recovered += len(readings)
                report.per_sink[origin_sink].readings_recovered += len(readings)

        tick += 1

    report.fidelity_ok = sorted(recovered) == sorted(expected)
    return report


# -- config / report JSON ----------------------------------------------------

CONFIG_FIELDS = (
    "nodes",
    "edges",
    "routes",
    "keys",
    "seed",
    "duration_ticks",
    "sense_period_ticks",
    "hop_latency_ticks",
)


def config_from_dict(doc: dict) -> SimConfig:
    """Build a SimConfig from a parsed JSON document.

    Required fields: `nodes` (list of {id, role, kind?, sense_period_ticks?}),
    `edges` (list of [a, b] pairs), `routes` (map of hub/sink id to node-id
    path), `keys` (map of sink id to lowercase hex key), `seed`,
    `duration_ticks`, `sense_period_ticks`, `hop_latency_ticks`.  Optional:
    `fusion_registry` (map like `keys`, overriding what the fusion center
    knows; defaults to `keys`) and `corruption` (list of {frame, bit}).
    """
    problems = [f"missing field {f!r}" for f in CONFIG_FIELDS if f not in doc]
    if problems:
        raise InvalidConfigError(problems)
    try:
        nodes = tuple(
            NodeSpec(
                id=int(n["id"]),
                role=str(n["role"]),
                kind=(
                    ReadingKind[str(n["kind"]).upper()]
                    if "kind" in n
                    else None
                ),
                sense_period_ticks=(
                    int(n["sense_period_ticks"])
                    if "sense_period_ticks" in n
                    else None
                ),
            )
            for n in doc["nodes"]
        )
        edges = tuple((int(a), int(b)) for a, b in doc["edges"])
        routes = {
            int(owner): tuple(int(x) for x in path)
            for owner, path in doc["routes"].items()
        }
        sink_keys = {
            int(owner): bytes.fromhex(hexkey)
            for owner, hexkey in doc["keys"].items()
        }
        registry = (
            {
                int(owner): bytes.fromhex(hexkey)
                for owner, hexkey in doc["fusion_registry"].items()
            }
            if "fusion_registry" in doc
            else dict(sink_keys)
        )
        corruption = tuple(
            FrameCorruption(frame_index=int(c["frame"]), bit_index=int(c["bit"]))
            for c in doc.get("corruption", ())
        )
        config = SimConfig(
            topology=Topology(nodes=nodes, edges=edges, routes=routes),
            sink_keys=sink_keys,
            registry=registry,
            seed=int(doc["seed"]),
            duration_ticks=int(doc["duration_ticks"]),
            sense_period_ticks=int(doc["sense_period_ticks"]),
            hop_latency_ticks=int(doc["hop_latency_ticks"]),
            corruption=corruption,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidConfigError([f"malformed config: {exc}"]) from exc
    problems = _validate_config(config)
    if problems:
        raise InvalidConfigError(problems)
    return config


def load_config(path: str) -> SimConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise InvalidConfigError([f"cannot read config: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfigError([f"config is not valid JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise InvalidConfigError(["config root must be a JSON object"])
    return config_from_dict(doc)


def report_to_dict(report: SimReport) -> dict:
    """JSON-ready view of a report; sink ids become string keys."""
    return {
        "readings_sensed": report.readings_sensed,
        "frames_sent": report.frames_sent,
        "frames_delivered": report.frames_delivered,
        "frames_rejected": dict(sorted(report.frames_rejected.items())),
        "readings_recovered": report.readings_recovered,
        "fidelity_ok": report.fidelity_ok,
        "per_sink": {
            str(sink): {
                "frames_sent": stats.frames_sent,
                "frames_delivered": stats.frames_delivered,
                "frames_rejected": stats.frames_rejected,
                "readings_recovered": stats.readings_recovered,
            }
            for sink, stats in sorted(report.per_sink.items())
        },
    }

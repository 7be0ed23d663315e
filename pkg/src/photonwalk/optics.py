"""Polarization-optics network backend for the coined walk.

The walk is compiled into a feed-forward network of polarizing beam
splitters (PBS), mirrored beam splitters (PBSBar), half-wave plates (HWP),
phase shifters, and detectors.  A PBS transmits the horizontal component and
reflects the vertical one; a PBSBar does the opposite.  Each lattice position
occupied by the walker is one spatial arm carrying a two-component Jones
vector.

One walk step needs three element layers:

* a coin layer: one HWP per occupied position, acting on that position's
  recombined beam;
* a split layer: one beam splitter per position, sending the horizontal
  component toward ``x + 1`` and the vertical component toward ``x - 1``.
  The outermost elements are fresh unprimed splitters (PBS on the positive
  side, PBSBar on the negative side); interior positions reuse their integer
  label with a prime mark;
* a merge layer: primed PBS recombiners that overlap the horizontal arm from
  ``x - 1`` with the vertical arm from ``x + 1`` into the single beam for the
  new position ``x``.  The flanking elements of this layer extend the line
  outward by one integer (PBS on the positive flank, PBSBar on the negative
  flank); they carry a single live input.

Recombining two orthogonally polarized arms leaves the second splitter
output provably empty.  Those dark ports are still wired forward, into the
same consumer as the bright port, so the graph has no dangling outputs; the
extra wire adds exactly zero amplitude.  The graph is strictly layered:
every wire connects a layer to the next one, and within a layer elements are
ordered by position, descending.

The text dump produced by :func:`layout_dump` is stable and intended for
golden-file comparison.  Format: a header line ``steps=<n>
coin_axis_deg=<angle>``, then one line per element::

    L<layer> E<index> kind=<kind> pos=<+int> primed=<0|1> angle_deg=<angle|->
        label=<+int|-> <port>-><Llayer:Eindex:port> ...

(single line, wrapped here for readability; output ports are listed in the
fixed order ``out_t``, ``out_r``, ``out``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .stats import Distribution
from .walk import InitialSpec, evolve, hwp_coin, make_initial
from .walk import distribution as walk_distribution

__all__ = [
    "LayoutError",
    "Element",
    "NetworkLayout",
    "EquivalenceReport",
    "pbs_scatter",
    "pbsbar_scatter",
    "pbsbar_scatter_composite",
    "build_network",
    "propagate",
    "propagate_with_trace",
    "insert_phase_layer",
    "layout_dump",
    "equivalence_report",
]

# input/output port names per element kind
_PORTS = {
    "PBS": (("in_a", "in_b"), ("out_t", "out_r")),
    "PBSBar": (("in_a", "in_b"), ("out_t", "out_r")),
    "HWP": (("in",), ("out",)),
    "PhaseShift": (("in",), ("out",)),
    "Detector": (("in",), ()),
}

_NORM_TOL = 1e-10

Port = tuple[int, int, str]


class LayoutError(RuntimeError):
    """Raised when a layout violates the wiring contract."""


@dataclass(frozen=True)
class Element:
    """One optical element.

    ``position`` is the lattice integer the element sits at; ``primed`` marks
    recombination nodes that reuse an integer already visited by the line.
    ``angle`` is the HWP axis angle or the phase shift, in radians.  Detectors
    carry the position ``label`` they report.
    """

    kind: str
    position: int
    primed: bool = False
    angle: float = 0.0
    label: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _PORTS:
            raise LayoutError(f"unknown element kind {self.kind!r}")

    @property
    def input_ports(self) -> tuple[str, ...]:
        return _PORTS[self.kind][0]

    @property
    def output_ports(self) -> tuple[str, ...]:
        return _PORTS[self.kind][1]


@dataclass
class NetworkLayout:
    """Strictly layered element graph for an ``n_steps`` walk.

    ``wires`` maps each output port to the input port it feeds; ports are
    ``(layer_index, element_index, port_name)`` tuples.  Several output ports
    may feed one input port (used only for provably dark arms).
    """

    n_steps: int
    layers: list[list[Element]]
    wires: dict[Port, Port]
    input_port: Port
    coin_axis: float

    def element_at(self, port: Port) -> Element:
        return self.layers[port[0]][port[1]]

    def detectors(self) -> list[Element]:
        return [e for layer in self.layers for e in layer if e.kind == "Detector"]

    def validate(self) -> None:
        """Check the wiring contract; raise :class:`LayoutError` on violation."""
        for src, dst in self.wires.items():
            for port, role in ((src, 1), (dst, 0)):
                layer_i, elem_i, name = port
                if not (0 <= layer_i < len(self.layers)):
                    raise LayoutError(f"port {port} addresses missing layer")
                if not (0 <= elem_i < len(self.layers[layer_i])):
                    raise LayoutError(f"port {port} addresses missing element")
                elem = self.layers[layer_i][elem_i]
                names = _PORTS[elem.kind][role]
                if name not in names:
                    raise LayoutError(f"port {port} is not valid for {elem.kind}")
            if dst[0] != src[0] + 1:
                raise LayoutError(
                    f"wire {src}->{dst} does not connect adjacent layers"
                )
        for layer_i, layer in enumerate(self.layers):
            for elem_i, elem in enumerate(layer):
                for name in elem.output_ports:
                    if (layer_i, elem_i, name) not in self.wires:
                        raise LayoutError(
                            f"unwired output port {(layer_i, elem_i, name)}"
                        )
        labels = [e.label for e in self.detectors()]
        if len(labels) != self.n_steps + 1:
            raise LayoutError(
                f"expected {self.n_steps + 1} detectors, found {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise LayoutError("detector labels are not distinct")
        for label in labels:
            if label is None or (label + self.n_steps) % 2 != 0:
                raise LayoutError(f"detector label {label} has wrong parity")


@dataclass(frozen=True)
class EquivalenceReport:
    """Per-position comparison of the state-vector and network backends."""

    n_steps: int
    tolerance: float
    max_abs_discrepancy: float
    passed: bool
    table: tuple[tuple[int, float, float], ...]


def _vec(x: np.ndarray | None) -> np.ndarray:
    if x is None:
        return np.zeros(2, dtype=np.complex128)
    return np.asarray(x, dtype=np.complex128)


def pbs_scatter(
    in_a: np.ndarray | None, in_b: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Scatter two input beams off a PBS.

    The transmitted port continues ``in_a``: it carries the horizontal
    component of ``in_a`` plus the reflected vertical component of ``in_b``.
    The reflected port carries the vertical component of ``in_a`` plus the
    horizontal component of ``in_b``.  Reflections pick up no phase.
    """
    a, b = _vec(in_a), _vec(in_b)
    out_t = np.array([a[0], b[1]], dtype=np.complex128)
    out_r = np.array([b[0], a[1]], dtype=np.complex128)
    return out_t, out_r


def pbsbar_scatter(
    in_a: np.ndarray | None, in_b: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Mirror-image splitter: transmits vertical, reflects horizontal.

    Only the routing is exchanged relative to :func:`pbs_scatter`; the
    polarization labels on the amplitudes are untouched.
    """
    a, b = _vec(in_a), _vec(in_b)
    out_t = np.array([b[0], a[1]], dtype=np.complex128)
    out_r = np.array([a[0], b[1]], dtype=np.complex128)
    return out_t, out_r


def pbsbar_scatter_composite(
    in_a: np.ndarray | None, in_b: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """PBSBar built from a plain PBS sandwiched between 45-degree HWPs.

    Each input is rotated by a half-wave plate at 45 degrees (which swaps the
    polarization components), scattered by an ordinary PBS, and each output is
    rotated back the same way.
    """
    swap = hwp_coin(np.pi / 4.0)
    t, r = pbs_scatter(swap @ _vec(in_a), swap @ _vec(in_b))
    return swap @ t, swap @ r


def build_network(n_steps: int, coin_axis: float = np.pi / 8.0) -> NetworkLayout:
    """Compile an ``n_steps`` walk into a layered element graph.

    Layer sequence per step: coin HWPs, splitters, recombiners; the
    recombiner layer is absent after the first split, where no two arms share
    a target yet.  The final layer holds ``n_steps + 1`` detectors labeled
    with the reachable positions.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")

    layers: list[list[Element]] = []
    wires: dict[Port, Port] = {}
    input_port: Port = (0, 0, "in")
    # ports feeding each position's next consumer; [] for the network input
    feeds: dict[int, list[Port]] = {0: []}

    for k in range(1, n_steps + 1):
        positions = sorted(feeds, reverse=True)

        # coin layer
        li = len(layers)
        coin_layer = []
        coin_out: dict[int, Port] = {}
        for idx, pos in enumerate(positions):
            coin_layer.append(Element("HWP", pos, angle=coin_axis))
            for src in feeds[pos]:
                wires[src] = (li, idx, "in")
            coin_out[pos] = (li, idx, "out")
        layers.append(coin_layer)

        # split layer
        li = len(layers)
        split_layer = []
        arms: dict[int, dict[str, Port]] = {}
        hi, lo = positions[0], positions[-1]
        for idx, pos in enumerate(positions):
            if pos == lo and pos != hi:
                kind, primed = "PBSBar", False
            elif pos == hi:
                kind, primed = "PBS", False
            else:
                kind, primed = "PBS", True
            split_layer.append(Element(kind, pos, primed=primed))
            wires[coin_out[pos]] = (li, idx, "in_a")
            if kind == "PBS":
                h_port, v_port = (li, idx, "out_t"), (li, idx, "out_r")
            else:
                h_port, v_port = (li, idx, "out_r"), (li, idx, "out_t")
            arms.setdefault(pos + 1, {})["H"] = h_port
            arms.setdefault(pos - 1, {})["V"] = v_port
        layers.append(split_layer)

        if k == 1:
            feeds = {pos: list(ports.values()) for pos, ports in arms.items()}
            continue

        # merge layer
        li = len(layers)
        merge_layer = []
        feeds = {}
        for idx, pos in enumerate(sorted(arms, reverse=True)):
            ports = arms[pos]
            if "H" in ports and "V" in ports:
                merge_layer.append(Element("PBS", pos, primed=True))
                wires[ports["H"]] = (li, idx, "in_a")
                wires[ports["V"]] = (li, idx, "in_b")
            elif "H" in ports:
                merge_layer.append(Element("PBS", pos))
                wires[ports["H"]] = (li, idx, "in_a")
            else:
                merge_layer.append(Element("PBSBar", pos))
                wires[ports["V"]] = (li, idx, "in_a")
            # the second splitter output is dark; route it with the bright one
            feeds[pos] = [(li, idx, "out_t"), (li, idx, "out_r")]
        layers.append(merge_layer)

    # detector layer
    li = len(layers)
    det_layer = []
    for idx, pos in enumerate(sorted(feeds, reverse=True)):
        det_layer.append(Element("Detector", pos, label=pos))
        for src in feeds[pos]:
            wires[src] = (li, idx, "in")
    layers.append(det_layer)

    layout = NetworkLayout(
        n_steps=n_steps,
        layers=layers,
        wires=wires,
        input_port=input_port,
        coin_axis=coin_axis,
    )
    layout.validate()
    return layout


def _scatter(elem: Element, get):
    if elem.kind == "HWP":
        return {"out": hwp_coin(elem.angle) @ get("in")}
    if elem.kind == "PhaseShift":
        return {"out": np.exp(1j * elem.angle) * get("in")}
    if elem.kind == "PBS":
        t, r = pbs_scatter(get("in_a"), get("in_b"))
        return {"out_t": t, "out_r": r}
    if elem.kind == "PBSBar":
        t, r = pbsbar_scatter(get("in_a"), get("in_b"))
        return {"out_t": t, "out_r": r}
    raise LayoutError(f"cannot scatter element kind {elem.kind!r}")


def propagate_with_trace(
    layout: NetworkLayout, input_state: np.ndarray
) -> tuple[Distribution, np.ndarray]:
    """Propagate an input Jones vector and return (distribution, norm trace).

    The trace holds, after each layer, the norm still in flight plus the
    probability already absorbed by detectors; unitarity keeps every entry at
    one up to rounding.
    """
    vec = np.asarray(input_state, dtype=np.complex128)
    if vec.shape != (2,):
        raise ValueError("input_state must be a length-2 Jones vector")
    if abs(float(np.sum(np.abs(vec) ** 2)) - 1.0) > 1e-9:
        raise ValueError("input_state must have unit norm")

    field: dict[Port, np.ndarray] = {layout.input_port: vec}
    detected: dict[int, float] = {}
    norms = []
    for li, layer in enumerate(layout.layers):
        nxt: dict[Port, np.ndarray] = {}
        for ei, elem in enumerate(layer):
            def get(name: str, _li=li, _ei=ei) -> np.ndarray:
                return field.get((_li, _ei, name), None)

            if elem.kind == "Detector":
                amp = _vec(get("in"))
                detected[elem.label] = detected.get(elem.label, 0.0) + float(
                    np.sum(np.abs(amp) ** 2)
                )
                continue
            for name, out in _scatter(elem, lambda n: _vec(get(n))).items():
                port = (li, ei, name)
                dst = layout.wires.get(port)
                if dst is None:
                    raise LayoutError(f"unwired output port {port}")
                nxt[dst] = nxt.get(dst, 0.0) + out
        live = sum(float(np.sum(np.abs(v) ** 2)) for v in nxt.values())
        norms.append(live + sum(detected.values()))
        field = nxt

    total = sum(detected.values())
    if abs(total - 1.0) > _NORM_TOL:
        raise RuntimeError(f"propagation lost norm: detectors sum to {total!r}")
    dist = Distribution(
        probabilities={int(x): p for x, p in sorted(detected.items())},
        step_count=layout.n_steps,
    )
    return dist, np.asarray(norms)


def propagate(layout: NetworkLayout, input_state: np.ndarray) -> Distribution:
    """Position distribution measured by the detectors for one input beam."""
    dist, _ = propagate_with_trace(layout, input_state)
    return dist


def insert_phase_layer(
    layout: NetworkLayout, boundary_index: int, phase: float
) -> NetworkLayout:
    """Insert a layer of phase shifters on every arm crossing a boundary.

    ``boundary_index`` is the index of the layer the new elements are placed
    in front of (1 <= boundary_index <= number of layers - 1).  Each wire
    crossing the boundary is split through its own PhaseShift element with
    the given phase.
    """
    if not 1 <= boundary_index < len(layout.layers):
        raise ValueError("boundary_index out of range")

    def remap(port: Port) -> Port:
        li, ei, name = port
        return (li + 1, ei, name) if li >= boundary_index else port

    crossing = sorted(
        (src for src in layout.wires if src[0] == boundary_index - 1),
        key=lambda p: (p[1], p[2]),
    )
    new_wires = {
        remap(src): remap(dst)
        for src, dst in layout.wires.items()
        if src[0] != boundary_index - 1
    }
    new_layer = []
    for idx, src in enumerate(crossing):
        dst = layout.wires[src]
        new_layer.append(
            Element("PhaseShift", layout.element_at(dst).position, angle=phase)
        )
        new_wires[src] = (boundary_index, idx, "in")
        new_wires[(boundary_index, idx, "out")] = remap(dst)
    new_layers = (
        layout.layers[:boundary_index] + [new_layer] + layout.layers[boundary_index:]
    )
    return NetworkLayout(
        n_steps=layout.n_steps,
        layers=new_layers,
        wires=new_wires,
        input_port=layout.input_port,
        coin_axis=layout.coin_axis,
    )


def layout_dump(layout: NetworkLayout) -> str:
    """Deterministic text serialization of a layout (format in module docstring)."""
    lines = [
        f"steps={layout.n_steps} coin_axis_deg={np.degrees(layout.coin_axis):.6f}"
    ]
    for li, layer in enumerate(layout.layers):
        for ei, elem in enumerate(layer):
            if elem.kind in ("HWP", "PhaseShift"):
                angle = f"{np.degrees(elem.angle):.6f}"
            else:
                angle = "-"
            label = f"{elem.label:+d}" if elem.label is not None else "-"
            parts = [
                f"L{li:02d} E{ei:02d}",
                f"kind={elem.kind}",
                f"pos={elem.position:+d}",
                f"primed={int(elem.primed)}",
                f"angle_deg={angle}",
                f"label={label}",
            ]
            for name in ("out_t", "out_r", "out"):
                if (li, ei, name) in layout.wires:
                    dl, de, dn = layout.wires[(li, ei, name)]
                    parts.append(f"{name}->L{dl:02d}:E{de:02d}:{dn}")
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def equivalence_report(
    n_steps: int,
    initial: InitialSpec,
    coin_axis: float = np.pi / 8.0,
    tolerance: float = 1e-10,
) -> EquivalenceReport:
    """Run both backends on the same walk and compare per-position."""
    walked = walk_distribution(
        evolve(make_initial(initial, n_steps), hwp_coin(coin_axis), n_steps)
    )
    net = propagate(build_network(n_steps, coin_axis), initial.coin_vector())
    offset = initial.start_position
    net_abs = {x + offset: p for x, p in net.probabilities.items()}
    support = sorted(set(walked.probabilities) | set(net_abs))
    table = tuple(
        (x, walked.probability(x), net_abs.get(x, 0.0)) for x in support
    )
    max_diff = max((abs(w - n) for _, w, n in table), default=0.0)
    return EquivalenceReport(
        n_steps=n_steps,
        tolerance=tolerance,
        max_abs_discrepancy=max_diff,
        passed=max_diff < tolerance,
        table=table,
    )

"""Shipped example presentations, loadable by name."""

from __future__ import annotations

from importlib import resources

from ..presentation import Presentation, parse

#: Names expected to pass the full confluence certificate.
CERTIFIED = (
    "quantum_plane",
    "quantum_space_3",
    "weyl_a1",
    "shift_sh",
    "sklyanin_c0",
    "diffusion_2",
    "skew3d_homogeneous",
    "commutative_3",
)


def available() -> list[str]:
    names = []
    for entry in resources.files(__package__).iterdir():
        if entry.name.endswith(".spbw"):
            names.append(entry.name[: -len(".spbw")])
    return sorted(names)


def source(name: str) -> str:
    path = resources.files(__package__) / f"{name}.spbw"
    if not path.is_file():
        raise KeyError(f"no shipped presentation named {name!r}")
    return path.read_text(encoding="utf-8")


def load(name: str) -> Presentation:
    return parse(source(name), name)

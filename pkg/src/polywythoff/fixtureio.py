"""Line-oriented fixture files for groups given by permutation generators.

Two headers are supported:
  tail-triangle n=<n> degree=<N>   with lines  alpha<i> = <cycles>, beta = <cycles>
  string-cgroup n=<n> degree=<N>   with lines  rho<i> = <cycles>
plus an optional trailing ``expect order=<m>``. Parsing and printing
round-trip bit-exactly for canonical files.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .elements import Perm, parse_perm


@dataclass(frozen=True)
class Fixture:
    kind: str  # "tail-triangle" | "string-cgroup"
    n: int
    degree: int
    gens: tuple  # alphas + (beta,) for tail-triangle; rhos for string-cgroup
    expect_order: int | None = None

    @property
    def alphas(self) -> tuple:
        assert self.kind == "tail-triangle"
        return self.gens[:-1]

    @property
    def beta(self) -> Perm:
        assert self.kind == "tail-triangle"
        return self.gens[-1]


def parse_fixture(text: str) -> Fixture:
    lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty fixture")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("tail-triangle", "string-cgroup"):
        raise ValueError(f"bad fixture header: {lines[0]!r}")
    kind = head[0]
    try:
        n = int(head[1].removeprefix("n="))
        degree = int(head[2].removeprefix("degree="))
    except ValueError:
        raise ValueError(f"bad fixture header: {lines[0]!r}") from None

    expect_order = None
    body: dict[str, Perm] = {}
    for lineno, ln in enumerate(lines[1:], start=2):
        if ln.startswith("expect "):
            expect_order = int(ln.removeprefix("expect ").removeprefix("order="))
            continue
        if "=" not in ln:
            raise ValueError(f"line {lineno}: expected '<name> = <cycles>'")
        name, _, rhs = ln.partition("=")
        name = name.strip()
        if name in body:
            raise ValueError(f"line {lineno}: duplicate generator {name}")
        body[name] = parse_perm(rhs.strip(), degree)

    if kind == "tail-triangle":
        want = [f"alpha{i}" for i in range(n)] + ["beta"]
    else:
        want = [f"rho{i}" for i in range(n)]
    missing = [w for w in want if w not in body]
    extra = [k for k in body if k not in want]
    if missing or extra:
        raise ValueError(f"fixture generators mismatch: missing={missing} extra={extra}")
    return Fixture(kind, n, degree, tuple(body[w] for w in want), expect_order)


def format_fixture(fx: Fixture) -> str:
    out = [f"{fx.kind} n={fx.n} degree={fx.degree}"]
    if fx.kind == "tail-triangle":
        for i, g in enumerate(fx.gens[:-1]):
            out.append(f"alpha{i} = {g}")
        out.append(f"beta = {fx.gens[-1]}")
    else:
        for i, g in enumerate(fx.gens):
            out.append(f"rho{i} = {g}")
    if fx.expect_order is not None:
        out.append(f"expect order={fx.expect_order}")
    return "\n".join(out) + "\n"


def load_fixture(path: str) -> Fixture:
    with open(path, encoding="utf-8") as fh:
        return parse_fixture(fh.read())


def builtin_fixture(name: str) -> Fixture:
    """Load one of the fixtures shipped inside the package."""
    data = resources.files("polywythoff.fixtures").joinpath(name).read_text()
    return parse_fixture(data)


def builtin_fixture_names() -> list[str]:
    root = resources.files("polywythoff.fixtures")
    return sorted(
        p.name for p in root.iterdir() if p.name.endswith((".tt", ".sg"))
    )

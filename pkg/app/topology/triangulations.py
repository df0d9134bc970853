"""Triangulaciones con nombre usadas por la CLI y las pruebas"""
from typing import Callable, Dict

from app.topology.simplicial import SimplicialComplex, product_complex


def triangle_circle() -> SimplicialComplex:
    """Borde del triángulo: círculo con 3 vértices"""
    return SimplicialComplex.from_labels(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])


def polygon(k: int, prefix: str = "v") -> SimplicialComplex:
    """Círculo con k ≥ 3 vértices"""
    if k < 3:
        raise ValueError("Un polígono necesita al menos 3 vértices")
    labels = [f"{prefix}{i}" for i in range(k)]
    return SimplicialComplex.from_labels(labels, [[labels[i], labels[(i + 1) % k]] for i in range(k)])


def tetrahedron_boundary() -> SimplicialComplex:
    """S² como borde del 3-símplice"""
    return SimplicialComplex.from_maximal(range(4), [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])


def torus() -> SimplicialComplex:
    """Toro de 7 vértices: triángulos {i, i+1, i+3} y {i, i+2, i+3} mod 7"""
    triangles = []
    for i in range(7):
        triangles.append([i, (i + 1) % 7, (i + 3) % 7])
        triangles.append([i, (i + 2) % 7, (i + 3) % 7])
    return SimplicialComplex.from_maximal(range(7), triangles)


def projective_plane() -> SimplicialComplex:
    """ℝP² de 6 vértices"""
    triangles = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ]
    return SimplicialComplex.from_maximal(range(6), triangles)


def suspension(N: int) -> SimplicialComplex:
    """S² como suspensión del N-ágono: polos n, s y ecuador e0..e{N-1}"""
    if N < 3:
        raise ValueError("El ecuador necesita al menos 3 vértices")
    labels = ["n", "s"] + [f"e{i}" for i in range(N)]
    triangles = []
    for i in range(N):
        e, f = f"e{i}", f"e{(i + 1) % N}"
        triangles.append(["n", e, f])
        triangles.append(["s", e, f])
    return SimplicialComplex.from_labels(labels, triangles)


def hexagon_times_sphere() -> SimplicialComplex:
    """Producto (escalera) del hexágono por el borde del 3-símplice"""
    return product_complex(polygon(6), tetrahedron_boundary())


NAMED: Dict[str, Callable[[], SimplicialComplex]] = {
    "circle": triangle_circle,
    "square": lambda: polygon(4),
    "hexagon": lambda: polygon(6),
    "sphere": tetrahedron_boundary,
    "torus": torus,
    "rp2": projective_plane,
    "octahedron": lambda: suspension(4),
}

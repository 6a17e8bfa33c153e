"""Built-in sphere maps with rational parameters.

Angles are given through the circle parametrization u -> (cos t, sin t) so every coefficient stays rational.
"""
from crmaps.maps import CRMap
from exact.numbers import circle_point
from polys.polynomials import MultiPoly


def _z(nvars, *indices):
    result = MultiPoly.constant(nvars, 1)
    for index in indices:
        result = result * MultiPoly.z_var(nvars, index)
    return result


def linear_embedding(n, N=None):
    """(z_1, ..., z_{n+1}, 0, ..., 0)."""
    N = n if N is None else N
    nvars = n + 1
    components = [_z(nvars, j) for j in range(nvars)]
    components += [MultiPoly.zero(nvars)] * (N - n)
    return CRMap(n, N, components)


def builtin_dt(n, u):
    """(z_1, ..., z_n, cos(t) z_{n+1}, sin(t) z_1 z_{n+1}, ..., sin(t) z_{n+1}^2), N = 2n+1."""
    point = circle_point(u)
    nvars = n + 1
    last = n
    components = [_z(nvars, j) for j in range(n)]
    components.append(_z(nvars, last).scale(point.c))
    components += [_z(nvars, j, last).scale(point.s) for j in range(nvars)]
    return CRMap(n, 2 * n + 1, components)


def whitney(n):
    """The t = pi/2 member of the D_t family; its cos(t) z_{n+1} component vanishes."""
    return builtin_dt(n, 1)


def builtin_hst(n, u_s, u_t):
    """The two-parameter family H_{s,t} with N = 3n+2.

    Components: z_1..z_{n-1}, cos(s) z_n, z_{n+1}, sin(s) z_j z_n (j <= n),
    sin(s)cos(t) z_n z_{n+1}, sin(s)sin(t) z_j z_n z_{n+1} (j <= n+1).
    """
    s_angle, t_angle = circle_point(u_s), circle_point(u_t)
    nvars = n + 1
    penultimate, last = n - 1, n
    components = [_z(nvars, j) for j in range(n - 1)]
    components.append(_z(nvars, penultimate).scale(s_angle.c))
    components.append(_z(nvars, last))
    components += [_z(nvars, j, penultimate).scale(s_angle.s) for j in range(n)]
    components.append(_z(nvars, penultimate, last).scale(s_angle.s * t_angle.c))
    components += [_z(nvars, j, penultimate, last).scale(s_angle.s * t_angle.s) for j in range(nvars)]
    return CRMap(n, 3 * n + 2, components)

"""Independent reference values for the two-sphere conductor problem.

Two equal spheres of radius r centred at (-(r+eps/2),0,0) and (r+eps/2,0,0),
neutral perfect conductors in the applied potential p.x.  The exterior
potential is expanded in bispherical coordinates (mu, eta, phi) with foci at
(-a,0,0), (a,0,0).  Values printed here are frozen into
tests/reference_values.hpp; regenerate with `python3 bispherical_reference.py`.
"""
import numpy as np
from mpmath import mp, mpf

mp.dps = 40


def geometry(eps, r):
    c = mpf(r) + mpf(eps) / 2
    mu0 = mp.acosh(c / r)
    return c, mu0, r * mp.sinh(mu0)


def axial(eps, r=1, p1=1, nmax=6000):
    c, mu0, a = geometry(eps, r)
    g = [2 / mp.expm1((2 * n + 1) * mu0) for n in range(nmax)]
    U = p1 * a * mp.fsum((2 * n + 1) * g[n] for n in range(nmax)) / mp.fsum(g)
    B = [mp.sqrt(2) * g[n] * (U - (2 * n + 1) * p1 * a) for n in range(nmax)]
    return dict(a=a, B=B, U=U, p1=p1, c=c)


def transverse(eps, r=1, pt=1, nmax=6000):
    c, mu0, a = geometry(eps, r)
    A = [-2 * mp.sqrt(2) * a * pt * mp.exp(-(n + mpf(1) / 2) * mu0) /
         mp.cosh((n + mpf(1) / 2) * mu0) for n in range(nmax)]
    A[0] = mpf(0)
    return dict(a=a, A=A, pt=pt, c=c)


def coords(a, x, y, z):
    rho = mp.sqrt(y * y + z * z)
    d1 = mp.sqrt((x + a) ** 2 + rho ** 2)
    d2 = mp.sqrt((x - a) ** 2 + rho ** 2)
    mu = mp.log(d1 / d2)
    eta = mp.atan2(2 * a * rho, x * x + rho * rho - a * a)
    return mu, eta, rho


def u_axial(S, x, y, z):
    mu, eta, _ = coords(S['a'], x, y, z)
    w = mp.cosh(mu) - mp.cos(eta)
    t = mp.cos(eta)
    acc, Pm, Pc = mpf(0), mpf(1), t
    for n, b in enumerate(S['B']):
        if n == 0:
            P = mpf(1)
        elif n == 1:
            P = t
        else:
            P = ((2 * n - 1) * t * Pc - (n - 1) * Pm) / n
            Pm, Pc = Pc, P
        term = b * mp.sinh((n + mpf(1) / 2) * mu) * P
        acc += term
        if n > 20 and abs(b) < mpf(10) ** -35:
            break
    return S['p1'] * x + mp.sqrt(w) * acc


def u_transverse(S, x, y, z):
    mu, eta, rho = coords(S['a'], x, y, z)
    w = mp.cosh(mu) - mp.cos(eta)
    t, s = mp.cos(eta), mp.sin(eta)
    cphi = z / rho if rho > 0 else mpf(1)
    acc = mpf(0)
    Pm, Pc, dPm, dPc = mpf(1), t, mpf(0), mpf(1)
    for n in range(1, len(S['A'])):
        if n >= 2:
            P = ((2 * n - 1) * t * Pc - (n - 1) * Pm) / n
            dP = dPm + (2 * n - 1) * Pc
            Pm, Pc, dPm, dPc = Pc, P, dPc, dP
        acc += S['A'][n] * mp.cosh((n + mpf(1) / 2) * mu) * s * dPc
        if n > 20 and abs(S['A'][n]) < mpf(10) ** -35:
            break
    return S['pt'] * z + mp.sqrt(w) * acc * cphi


def grad(f, x, y, z, h=mpf(10) ** -12):
    return [(f(x + h, y, z) - f(x - h, y, z)) / (2 * h),
            (f(x, y + h, z) - f(x, y - h, z)) / (2 * h),
            (f(x, y, z + h) - f(x, y, z - h)) / (2 * h)]


if __name__ == '__main__':
    eps_list = ['0.2', '0.1', '0.05', '0.02', '0.01', '0.005', '0.002', '0.001']
    print('// eps, axial dudx(O) for p=(1,0,0), transverse dudz(O) for p=(0,0,1)')
    for e in eps_list:
        eps = mpf(e)
        Sa, St = axial(eps), transverse(eps)
        ga = grad(lambda *q: u_axial(Sa, *q), mpf(0), mpf(0), mpf(0))
        gt = grad(lambda *q: u_transverse(St, *q), mpf(0), mpf(0), mpf(0))
        print('{%s, %s, %s},' % (e, mp.nstr(ga[0], 17), mp.nstr(gt[2], 17)))
    print('// eps=0.1, p=(1,0,1): grad u at (0.3, 0.8, -0.5) and (0, 2, 0)')
    Sa, St = axial(mpf('0.1')), transverse(mpf('0.1'))
    for P in [(mpf('0.3'), mpf('0.8'), mpf('-0.5')), (mpf(0), mpf(2), mpf(0))]:
        f = lambda *q: u_axial(Sa, *q) + u_transverse(St, *q)
        print([mp.nstr(v, 17) for v in grad(f, *P)])
    print('// eps=0.1 axial sphere potential U =', mp.nstr(Sa['U'], 17))
